#include "congraph/field.hpp"

#include <stdexcept>
#include <string>

namespace congraph {

namespace {

using Digits = std::vector<uint32_t>;

void trim(Digits& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// Remainder of a modulo monic b over F_p.
Digits rem_monic(Digits a, const Digits& b, uint32_t p) {
  trim(a);
  const size_t db = b.size() - 1;
  while (a.size() > db) {
    const uint32_t c = a.back();
    const size_t shift = a.size() - 1 - db;
    for (size_t i = 0; i <= db; ++i) {
      a[shift + i] = (a[shift + i] + (p - c) * b[i]) % p;
    }
    trim(a);
  }
  return a;
}

bool irreducible_over_prime(const Digits& f, uint32_t p) {
  const size_t deg = f.size() - 1;
  for (size_t d = 1; d <= deg / 2; ++d) {
    uint64_t count = 1;
    for (size_t i = 0; i < d; ++i) count *= p;
    for (uint64_t m = 0; m < count; ++m) {
      Digits div(d + 1);
      uint64_t x = m;
      for (size_t i = 0; i < d; ++i) {
        div[i] = static_cast<uint32_t>(x % p);
        x /= p;
      }
      div[d] = 1;
      if (rem_monic(f, div, p).empty()) return false;
    }
  }
  return true;
}

Digits to_digits(uint32_t code, uint32_t p, uint32_t k) {
  Digits d(k);
  for (uint32_t i = 0; i < k; ++i) {
    d[i] = code % p;
    code /= p;
  }
  return d;
}

uint32_t from_digits(const Digits& d, uint32_t p) {
  uint32_t code = 0;
  for (size_t i = d.size(); i-- > 0;) code = code * p + d[i];
  return code;
}

}  // namespace

bool is_prime(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::vector<uint32_t> least_irreducible(uint32_t p, uint32_t k) {
  if (k == 1) return {0, 1};
  uint64_t count = 1;
  for (uint32_t i = 0; i < k; ++i) count *= p;
  // c_0 is the most significant position of the ordering.
  for (uint64_t m = 0; m < count; ++m) {
    Digits f(k + 1);
    uint64_t x = m;
    for (uint32_t i = k; i-- > 0;) {
      f[i] = static_cast<uint32_t>(x % p);
      x /= p;
    }
    f[k] = 1;
    if (irreducible_over_prime(f, p)) return f;
  }
  throw std::logic_error("no irreducible polynomial found");
}

FieldPtr Field::create(uint32_t p, uint32_t k) {
  if (!is_prime(p)) throw std::invalid_argument("field characteristic " + std::to_string(p) + " is not prime");
  if (k == 0) throw std::invalid_argument("field extension degree must be at least 1");
  uint64_t q = 1;
  for (uint32_t i = 0; i < k; ++i) {
    q *= p;
    if (q > kMaxOrder) {
      throw std::invalid_argument("field order exceeds supported bound " + std::to_string(kMaxOrder));
    }
  }
  std::vector<uint32_t> modulus;
  if (k > 1) modulus = least_irreducible(p, k);
  return FieldPtr(new Field(p, k, std::move(modulus)));
}

FieldPtr Field::create_order(uint32_t q) {
  if (q < 2) throw std::invalid_argument("field order must be a prime power");
  uint32_t p = 2;
  while (q % p != 0) ++p;
  uint32_t k = 0;
  uint32_t r = q;
  while (r % p == 0) {
    r /= p;
    ++k;
  }
  if (r != 1) throw std::invalid_argument("field order " + std::to_string(q) + " is not a prime power");
  return create(p, k);
}

Field::Field(uint32_t p, uint32_t k, std::vector<uint32_t> modulus)
    : p_(p), k_(k), q_(1), modulus_(std::move(modulus)) {
  for (uint32_t i = 0; i < k_; ++i) q_ *= p_;
  const size_t qq = size_t{q_} * q_;
  add_.resize(qq);
  mul_.resize(qq);
  neg_.resize(q_);
  inv_.assign(q_, 0);

  std::vector<Digits> digits(q_);
  for (uint32_t a = 0; a < q_; ++a) digits[a] = to_digits(a, p_, k_);

  for (uint32_t a = 0; a < q_; ++a) {
    Digits n(k_);
    for (uint32_t i = 0; i < k_; ++i) n[i] = (p_ - digits[a][i]) % p_;
    neg_[a] = static_cast<uint16_t>(from_digits(n, p_));
    for (uint32_t b = 0; b < q_; ++b) {
      Digits s(k_);
      for (uint32_t i = 0; i < k_; ++i) s[i] = (digits[a][i] + digits[b][i]) % p_;
      add_[size_t{a} * q_ + b] = static_cast<uint16_t>(from_digits(s, p_));

      Digits prod(2 * k_ - 1, 0);
      for (uint32_t i = 0; i < k_; ++i) {
        for (uint32_t j = 0; j < k_; ++j) {
          prod[i + j] = (prod[i + j] + digits[a][i] * digits[b][j]) % p_;
        }
      }
      if (k_ > 1) prod = rem_monic(prod, modulus_, p_);
      prod.resize(k_, 0);
      const uint32_t c = from_digits(prod, p_);
      mul_[size_t{a} * q_ + b] = static_cast<uint16_t>(c);
      if (c == 1) inv_[a] = static_cast<uint16_t>(b);
    }
  }

  primitive_ = FieldElem{1};
  for (uint32_t a = 1; a < q_; ++a) {
    uint32_t order = 1;
    FieldElem x{a};
    while (x.code != 1) {
      x = mul(x, FieldElem{a});
      ++order;
    }
    if (order == q_ - 1) {
      primitive_ = FieldElem{a};
      break;
    }
  }
}

FieldElem Field::from_code(uint32_t code) const {
  if (code >= q_) throw std::out_of_range("field element code " + std::to_string(code) + " out of range");
  return {code};
}

FieldElem Field::from_int(int64_t m) const {
  int64_t r = m % static_cast<int64_t>(p_);
  if (r < 0) r += p_;
  return {static_cast<uint32_t>(r)};
}

FieldElem Field::inv(FieldElem a) const {
  if (a.code == 0) throw std::domain_error("inverse of zero field element");
  return {inv_[a.code]};
}

FieldElem Field::pow(FieldElem a, uint64_t e) const {
  FieldElem result = one();
  while (e > 0) {
    if (e & 1) result = mul(result, a);
    a = mul(a, a);
    e >>= 1;
  }
  return result;
}

std::vector<FieldElem> Field::elements() const {
  std::vector<FieldElem> out(q_);
  for (uint32_t a = 0; a < q_; ++a) out[a] = FieldElem{a};
  return out;
}

std::vector<FieldElem> Field::units() const {
  std::vector<FieldElem> out;
  out.reserve(q_ - 1);
  for (uint32_t a = 1; a < q_; ++a) out.push_back(FieldElem{a});
  return out;
}

std::vector<FieldElem> Field::prime_basis() const {
  std::vector<FieldElem> out;
  uint32_t code = 1;
  for (uint32_t i = 0; i < k_; ++i) {
    out.push_back(FieldElem{code});
    code *= p_;
  }
  return out;
}

}  // namespace congraph
