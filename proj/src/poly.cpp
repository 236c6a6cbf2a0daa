#include "congraph/poly.hpp"

#include <cctype>
#include <stdexcept>

namespace congraph {

namespace {

void require_same_field(const Poly& a, const Poly& b) {
  if (&a.field() != &b.field()) throw std::invalid_argument("polynomials over different fields");
}

[[noreturn]] void parse_error(std::string_view text, const std::string& why) {
  throw std::invalid_argument("cannot parse polynomial '" + std::string(text) + "': " + why);
}

}  // namespace

Poly::Poly(FieldPtr field, std::vector<FieldElem> coeffs) : field_(std::move(field)), coeffs_(std::move(coeffs)) {
  for (FieldElem c : coeffs_) {
    if (c.code >= field_->order()) throw std::out_of_range("coefficient code out of range");
  }
  normalize();
}

void Poly::normalize() {
  while (!coeffs_.empty() && coeffs_.back().code == 0) coeffs_.pop_back();
}

Poly Poly::constant(FieldPtr field, FieldElem c) { return Poly(std::move(field), {c}); }

Poly Poly::monomial(FieldPtr field, FieldElem c, int exponent) {
  if (exponent < 0) throw std::invalid_argument("negative exponent");
  std::vector<FieldElem> coeffs(static_cast<size_t>(exponent) + 1);
  coeffs.back() = c;
  return Poly(std::move(field), std::move(coeffs));
}

Poly Poly::from_code(FieldPtr field, uint64_t code) {
  const uint32_t q = field->order();
  std::vector<FieldElem> coeffs;
  while (code > 0) {
    coeffs.push_back(FieldElem{static_cast<uint32_t>(code % q)});
    code /= q;
  }
  return Poly(std::move(field), std::move(coeffs));
}

FieldElem Poly::coeff(int i) const {
  if (i < 0 || i > degree()) return FieldElem{0};
  return coeffs_[static_cast<size_t>(i)];
}

uint64_t Poly::code() const {
  uint64_t code = 0;
  const uint64_t q = field_->order();
  for (size_t i = coeffs_.size(); i-- > 0;) {
    if (code > (UINT64_MAX - coeffs_[i].code) / q) throw std::overflow_error("polynomial code exceeds 64 bits");
    code = code * q + coeffs_[i].code;
  }
  return code;
}

std::string Poly::to_string() const {
  if (is_zero()) return "0";
  std::string out;
  for (int i = degree(); i >= 0; --i) {
    const FieldElem c = coeff(i);
    if (c.code == 0) continue;
    if (!out.empty()) out += '+';
    if (i == 0) {
      out += std::to_string(c.code);
      continue;
    }
    if (c.code != 1) out += std::to_string(c.code) + "*";
    out += 't';
    if (i > 1) out += "^" + std::to_string(i);
  }
  return out;
}

Poly Poly::parse(FieldPtr field, std::string_view text) {
  std::string s;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  }
  if (s.empty()) parse_error(text, "empty input");

  const Field& f = *field;
  std::vector<FieldElem> coeffs;
  size_t pos = 0;
  auto read_uint = [&](uint64_t& value) {
    if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos]))) return false;
    value = 0;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
      value = value * 10 + static_cast<uint64_t>(s[pos] - '0');
      if (value > (1u << 30)) parse_error(text, "number too large");
      ++pos;
    }
    return true;
  };

  bool first = true;
  while (pos < s.size()) {
    bool negate = false;
    if (!first) {
      if (s[pos] == '+') {
        ++pos;
      } else if (s[pos] == '-') {
        negate = true;
        ++pos;
      } else {
        parse_error(text, "expected '+' or '-' between terms");
      }
    } else if (s[pos] == '-') {
      negate = true;
      ++pos;
    } else if (s[pos] == '+') {
      ++pos;
    }
    first = false;

    uint64_t coef = 1;
    bool have_coef = read_uint(coef);
    if (have_coef && coef >= f.order()) parse_error(text, "coefficient code out of range");
    uint64_t exponent = 0;
    if (pos < s.size() && (s[pos] == '*' || s[pos] == 't')) {
      if (s[pos] == '*') {
        if (!have_coef) parse_error(text, "'*' without coefficient");
        ++pos;
        if (pos >= s.size() || s[pos] != 't') parse_error(text, "expected 't' after '*'");
      }
      ++pos;  // 't'
      exponent = 1;
      if (pos < s.size() && s[pos] == '^') {
        ++pos;
        if (!read_uint(exponent)) parse_error(text, "expected exponent after '^'");
      }
    } else if (!have_coef) {
      parse_error(text, "expected a term");
    }
    if (exponent > 1u << 16) parse_error(text, "exponent too large");
    if (coeffs.size() <= exponent) coeffs.resize(exponent + 1, FieldElem{0});
    FieldElem c{static_cast<uint32_t>(coef)};
    if (negate) c = f.neg(c);
    coeffs[exponent] = f.add(coeffs[exponent], c);
  }
  return Poly(std::move(field), std::move(coeffs));
}

Poly operator+(const Poly& a, const Poly& b) {
  require_same_field(a, b);
  const Field& f = a.field();
  std::vector<FieldElem> c(std::max(a.coeffs().size(), b.coeffs().size()));
  for (size_t i = 0; i < c.size(); ++i) {
    c[i] = f.add(a.coeff(static_cast<int>(i)), b.coeff(static_cast<int>(i)));
  }
  return Poly(a.field_ptr(), std::move(c));
}

Poly operator-(const Poly& a) {
  const Field& f = a.field();
  std::vector<FieldElem> c = a.coeffs();
  for (FieldElem& x : c) x = f.neg(x);
  return Poly(a.field_ptr(), std::move(c));
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

Poly operator*(const Poly& a, const Poly& b) {
  require_same_field(a, b);
  if (a.is_zero() || b.is_zero()) return Poly(a.field_ptr());
  const Field& f = a.field();
  const auto& ac = a.coeffs();
  const auto& bc = b.coeffs();
  std::vector<FieldElem> c(ac.size() + bc.size() - 1);
  for (size_t i = 0; i < ac.size(); ++i) {
    if (ac[i].code == 0) continue;
    for (size_t j = 0; j < bc.size(); ++j) {
      c[i + j] = f.add(c[i + j], f.mul(ac[i], bc[j]));
    }
  }
  return Poly(a.field_ptr(), std::move(c));
}

Poly scale(const Poly& a, FieldElem c) {
  const Field& f = a.field();
  std::vector<FieldElem> out = a.coeffs();
  for (FieldElem& x : out) x = f.mul(x, c);
  return Poly(a.field_ptr(), std::move(out));
}

DivRem divrem(const Poly& a, const Poly& b) {
  require_same_field(a, b);
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  const Field& f = a.field();
  std::vector<FieldElem> r = a.coeffs();
  const int db = b.degree();
  const FieldElem lead_inv = f.inv(b.lead());
  if (a.degree() < db) return {Poly(a.field_ptr()), a};
  std::vector<FieldElem> quot(static_cast<size_t>(a.degree() - db) + 1);
  for (int i = a.degree(); i >= db; --i) {
    const FieldElem c = f.mul(r[static_cast<size_t>(i)], lead_inv);
    if (c.code == 0) continue;
    quot[static_cast<size_t>(i - db)] = c;
    for (int j = 0; j <= db; ++j) {
      auto& slot = r[static_cast<size_t>(i - db + j)];
      slot = f.sub(slot, f.mul(c, b.coeff(j)));
    }
  }
  return {Poly(a.field_ptr(), std::move(quot)), Poly(a.field_ptr(), std::move(r))};
}

Poly operator/(const Poly& a, const Poly& b) { return divrem(a, b).quotient; }
Poly operator%(const Poly& a, const Poly& b) { return divrem(a, b).remainder; }

bool divides(const Poly& d, const Poly& a) {
  if (d.is_zero()) return a.is_zero();
  return (a % d).is_zero();
}

Poly make_monic(const Poly& a) {
  if (a.is_zero()) return a;
  return scale(a, a.field().inv(a.lead()));
}

Poly gcd(const Poly& a, const Poly& b) {
  Poly x = a;
  Poly y = b;
  while (!y.is_zero()) {
    Poly r = x % y;
    x = std::move(y);
    y = std::move(r);
  }
  return make_monic(x);
}

Xgcd xgcd(const Poly& a, const Poly& b) {
  require_same_field(a, b);
  const FieldPtr& fp = a.field_ptr();
  Poly r0 = a, r1 = b;
  Poly s0 = Poly::constant(fp, FieldElem{1}), s1(fp);
  Poly t0(fp), t1 = Poly::constant(fp, FieldElem{1});
  while (!r1.is_zero()) {
    DivRem qr = divrem(r0, r1);
    Poly s2 = s0 - qr.quotient * s1;
    Poly t2 = t0 - qr.quotient * t1;
    r0 = std::move(r1);
    r1 = std::move(qr.remainder);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) return {r0, s0, t0};
  const FieldElem c = a.field().inv(r0.lead());
  return {scale(r0, c), scale(s0, c), scale(t0, c)};
}

Poly derivative(const Poly& a) {
  const Field& f = a.field();
  if (a.degree() < 1) return Poly(a.field_ptr());
  std::vector<FieldElem> d(static_cast<size_t>(a.degree()));
  for (int i = 1; i <= a.degree(); ++i) {
    d[static_cast<size_t>(i - 1)] = f.mul(f.from_int(i), a.coeff(i));
  }
  return Poly(a.field_ptr(), std::move(d));
}

FieldElem eval(const Poly& a, FieldElem x) {
  const Field& f = a.field();
  FieldElem acc{0};
  for (int i = a.degree(); i >= 0; --i) acc = f.add(f.mul(acc, x), a.coeff(i));
  return acc;
}

Poly compose_shift(const Poly& a, FieldElem c) {
  const FieldPtr& fp = a.field_ptr();
  const Poly shift = Poly(fp, {c, FieldElem{1}});
  Poly acc(fp);
  for (int i = a.degree(); i >= 0; --i) acc = acc * shift + Poly::constant(fp, a.coeff(i));
  return acc;
}

Poly pow(const Poly& a, unsigned e) {
  Poly result = Poly::constant(a.field_ptr(), FieldElem{1});
  Poly base = a;
  while (e > 0) {
    if (e & 1u) result = result * base;
    base = base * base;
    e >>= 1u;
  }
  return result;
}

std::vector<Poly> monic_polys(const FieldPtr& field, int degree) {
  if (degree < 0) return {};
  const uint32_t q = field->order();
  uint64_t count = 1;
  for (int i = 0; i < degree; ++i) {
    count *= q;
    if (count > (uint64_t{1} << 32)) throw std::overflow_error("too many monic polynomials to enumerate");
  }
  std::vector<Poly> out;
  out.reserve(count);
  for (uint64_t m = 0; m < count; ++m) {
    std::vector<FieldElem> c(static_cast<size_t>(degree) + 1);
    uint64_t x = m;
    for (int i = 0; i < degree; ++i) {
      c[static_cast<size_t>(i)] = FieldElem{static_cast<uint32_t>(x % q)};
      x /= q;
    }
    c.back() = FieldElem{1};
    out.emplace_back(field, std::move(c));
  }
  return out;
}

}  // namespace congraph
