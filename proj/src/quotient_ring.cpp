#include "congraph/quotient_ring.hpp"

#include <stdexcept>

namespace congraph {

RingPtr QuotientRing::create(FieldPtr field, const Poly& g) {
  if (&g.field() != field.get()) throw std::invalid_argument("modulus is over a different field");
  if (g.degree() < 1) throw std::invalid_argument("quotient ring modulus must have degree >= 1");
  if (!g.is_monic()) throw std::invalid_argument("quotient ring modulus must be monic");
  uint64_t order = 1;
  for (int i = 0; i < g.degree(); ++i) {
    order *= field->order();
    if (order > kMaxOrder) throw std::invalid_argument("quotient ring too large");
  }
  return RingPtr(new QuotientRing(std::move(field), g));
}

QuotientRing::QuotientRing(FieldPtr field, Poly g)
    : field_(std::move(field)), g_(std::move(g)), factorization_(factor(g_)), n_(g_.degree()), order_(1) {
  for (int i = 0; i < n_; ++i) order_ *= field_->order();
  for (FieldElem c : g_.coeffs()) g_digits_.push_back(c.code);
  for (const auto& pp : factorization_.factors) {
    std::vector<uint32_t> d;
    for (FieldElem c : pp.prime.coeffs()) d.push_back(c.code);
    prime_digits_.push_back(std::move(d));
  }
  if (order_ > kTableOrder) return;

  // Write a = t a_hi + a_0 with a_hi = a / q, a_0 = a % q. Then
  // a + b = t (a_hi + b_hi) + (a_0 + b_0) and a b = t (a_hi b) + a_0 b, so
  // every entry follows from earlier rows in O(1).
  const uint32_t q = field_->order();
  const size_t Q = order_;
  std::vector<uint16_t> add(Q * Q), mul(Q * Q), neg(Q), inv(Q, 0);
  std::vector<uint16_t> times_t(Q), scalar(size_t{q} * Q);
  const RgElem t = n_ > 1 ? RgElem{q} : from_poly(Poly::variable(field_));
  for (uint32_t x = 0; x < Q; ++x) {
    times_t[x] = static_cast<uint16_t>(mul_slow(t, {x}).code);
    neg[x] = static_cast<uint16_t>(neg_slow({x}).code);
    for (uint32_t c = 0; c < q; ++c) scalar[size_t{c} * Q + x] = static_cast<uint16_t>(mul_slow({c}, {x}).code);
  }
  for (uint32_t a = 0; a < Q; ++a) {
    const uint32_t a_hi = a / q, a0 = a % q;
    for (uint32_t b = 0; b < Q; ++b) {
      const uint32_t b_hi = b / q, b0 = b % q;
      const uint32_t low = field_->add(FieldElem{a0}, FieldElem{b0}).code;
      add[a * Q + b] = static_cast<uint16_t>(a_hi == 0 && b_hi == 0 ? low : add[a_hi * Q + b_hi] * q + low);
    }
  }
  for (uint32_t a = 0; a < Q; ++a) {
    const uint32_t a_hi = a / q, a0 = a % q;
    for (uint32_t b = 0; b < Q; ++b) {
      const uint32_t m = a_hi == 0 ? scalar[a0 * Q + b] : add[size_t{times_t[mul[a_hi * Q + b]]} * Q + scalar[a0 * Q + b]];
      mul[a * Q + b] = static_cast<uint16_t>(m);
      if (m == 1) inv[a] = static_cast<uint16_t>(b);
    }
  }
  add_ = std::move(add);
  mul_ = std::move(mul);
  neg_ = std::move(neg);
  inv_ = std::move(inv);
}

RgElem QuotientRing::from_code(uint32_t code) const {
  if (code >= order_) throw std::out_of_range("ring element code " + std::to_string(code) + " out of range");
  return {code};
}

RgElem QuotientRing::from_poly(const Poly& f) const {
  if (&f.field() != field_.get()) throw std::invalid_argument("polynomial over a different field");
  const Poly r = f % g_;
  uint32_t code = 0;
  for (int i = r.degree(); i >= 0; --i) code = code * field_->order() + r.coeff(i).code;
  return {code};
}

Poly QuotientRing::to_poly(RgElem x) const { return Poly::from_code(field_, x.code); }

void QuotientRing::decode(RgElem x, Digits& out) const {
  const uint32_t q = field_->order();
  uint32_t code = x.code;
  for (int i = 0; i < n_; ++i) {
    out[static_cast<size_t>(i)] = code % q;
    code /= q;
  }
}

RgElem QuotientRing::encode(const Digits& d) const {
  uint32_t code = 0;
  for (int i = n_; i-- > 0;) code = code * field_->order() + d[static_cast<size_t>(i)];
  return {code};
}

RgElem QuotientRing::add_slow(RgElem a, RgElem b) const {
  Digits x, y;
  decode(a, x);
  decode(b, y);
  for (int i = 0; i < n_; ++i) {
    x[static_cast<size_t>(i)] = field_->add(FieldElem{x[static_cast<size_t>(i)]}, FieldElem{y[static_cast<size_t>(i)]}).code;
  }
  return encode(x);
}

RgElem QuotientRing::neg_slow(RgElem a) const {
  Digits x;
  decode(a, x);
  for (int i = 0; i < n_; ++i) x[static_cast<size_t>(i)] = field_->neg(FieldElem{x[static_cast<size_t>(i)]}).code;
  return encode(x);
}

RgElem QuotientRing::mul_slow(RgElem a, RgElem b) const {
  const Field& F = *field_;
  Digits x, y, prod{};
  decode(a, x);
  decode(b, y);
  for (int i = 0; i < n_; ++i) {
    if (x[static_cast<size_t>(i)] == 0) continue;
    for (int j = 0; j < n_; ++j) {
      auto& slot = prod[static_cast<size_t>(i + j)];
      slot = F.add(FieldElem{slot}, F.mul(FieldElem{x[static_cast<size_t>(i)]}, FieldElem{y[static_cast<size_t>(j)]})).code;
    }
  }
  // g is monic; clear degrees 2n-2 .. n from the top.
  for (int i = 2 * n_ - 2; i >= n_; --i) {
    const FieldElem c{prod[static_cast<size_t>(i)]};
    if (c.code == 0) continue;
    for (int j = 0; j <= n_; ++j) {
      auto& slot = prod[static_cast<size_t>(i - n_ + j)];
      slot = F.sub(FieldElem{slot}, F.mul(c, FieldElem{g_digits_[static_cast<size_t>(j)]})).code;
    }
  }
  return encode(prod);
}

bool QuotientRing::is_unit_slow(RgElem a) const {
  const Field& F = *field_;
  Digits x;
  decode(a, x);
  for (const auto& pd : prime_digits_) {
    Digits r = x;
    const int d = static_cast<int>(pd.size()) - 1;
    for (int i = n_ - 1; i >= d; --i) {
      const FieldElem c{r[static_cast<size_t>(i)]};
      if (c.code == 0) continue;
      for (int j = 0; j <= d; ++j) {
        auto& slot = r[static_cast<size_t>(i - d + j)];
        slot = F.sub(FieldElem{slot}, F.mul(c, FieldElem{pd[static_cast<size_t>(j)]})).code;
      }
    }
    bool zero = true;
    for (int i = 0; i < d; ++i) zero &= r[static_cast<size_t>(i)] == 0;
    if (zero) return false;
  }
  return true;
}

RgElem QuotientRing::inv_slow(RgElem a) const {
  const Xgcd x = xgcd(to_poly(a), g_);
  if (x.gcd.degree() != 0) throw std::domain_error("inverse of non-unit " + to_string(a));
  return from_poly(x.u);
}

bool QuotientRing::is_unit(RgElem a) const {
  if (has_tables()) return inv_[a.code] != 0;
  return is_unit_slow(a);
}

RgElem QuotientRing::inv(RgElem a) const {
  if (has_tables()) {
    if (inv_[a.code] == 0) throw std::domain_error("inverse of non-unit " + to_string(a));
    return {inv_[a.code]};
  }
  return inv_slow(a);
}

RgElem QuotientRing::pow(RgElem a, uint64_t e) const {
  RgElem result = one();
  while (e > 0) {
    if (e & 1) result = mul(result, a);
    a = mul(a, a);
    e >>= 1;
  }
  return result;
}

std::vector<RgElem> QuotientRing::elements() const {
  std::vector<RgElem> out(order_);
  for (uint32_t a = 0; a < order_; ++a) out[a] = RgElem{a};
  return out;
}

std::vector<RgElem> QuotientRing::units() const {
  std::vector<RgElem> out;
  for (uint32_t a = 1; a < order_; ++a) {
    if (is_unit({a})) out.push_back({a});
  }
  return out;
}

uint64_t unit_group_order(const QuotientRing& ring) {
  const uint64_t q = ring.field().order();
  uint64_t total = 1;
  for (const auto& [prime, mult] : ring.factorization().factors) {
    uint64_t qd = 1;
    for (int i = 0; i < prime.degree(); ++i) qd *= q;
    uint64_t local = 1;
    for (int i = 0; i < mult - 1; ++i) local *= qd;
    // q^{d n} (1 - q^{-d}) = q^{d (n-1)} (q^d - 1)
    total *= local * (qd - 1);
  }
  return total;
}

uint64_t square_class_index_closed_form(const QuotientRing& ring) {
  const uint64_t q = ring.field().order();
  if (q % 2 == 1) {
    // Each local factor contributes Z/2 (residue field units mod squares);
    // a non-square of F_q stays a non-square in F_{q^d} exactly when d is
    // odd, so F_q^x removes one factor of 2 unless every d_i is even.
    const auto& factors = ring.factorization().factors;
    bool all_even = true;
    for (const auto& pp : factors) all_even &= pp.prime.degree() % 2 == 0;
    const size_t r = factors.size();
    return uint64_t{1} << (all_even ? r : r - 1);
  }
  uint64_t index = 1;
  for (const auto& [prime, mult] : ring.factorization().factors) {
    for (int i = 0; i < prime.degree() * (mult / 2); ++i) index *= q;
  }
  return index;
}

namespace {

// Membership bitmap of F_q^x (R^x)^2.
std::vector<bool> square_class_subgroup(const QuotientRing& ring, const std::vector<RgElem>& units) {
  std::vector<bool> squares(ring.order(), false);
  for (RgElem u : units) squares[ring.mul(u, u).code] = true;
  std::vector<bool> subgroup(ring.order(), false);
  for (uint32_t s = 0; s < ring.order(); ++s) {
    if (!squares[s]) continue;
    for (FieldElem c : ring.field().units()) subgroup[ring.mul(ring.from_field(c), RgElem{s}).code] = true;
  }
  return subgroup;
}

}  // namespace

std::optional<uint64_t> square_class_index_brute_force(const QuotientRing& ring, uint64_t unit_cap) {
  if (unit_group_order(ring) > unit_cap) return std::nullopt;
  const std::vector<RgElem> units = ring.units();
  const std::vector<bool> subgroup = square_class_subgroup(ring, units);
  uint64_t size = 0;
  for (bool b : subgroup) size += b ? 1 : 0;
  return units.size() / size;
}

SquareClassIndex square_class_index(const QuotientRing& ring) {
  SquareClassIndex out{square_class_index_closed_form(ring), false};
  if (auto brute = square_class_index_brute_force(ring)) {
    if (*brute != out.value) {
      throw std::logic_error("square class index mismatch: closed form " + std::to_string(out.value) +
                             ", enumeration " + std::to_string(*brute));
    }
    out.brute_force_checked = true;
  }
  return out;
}

std::vector<RgElem> square_class_representatives(const QuotientRing& ring) {
  const std::vector<RgElem> units = ring.units();
  const std::vector<bool> subgroup = square_class_subgroup(ring, units);
  std::vector<RgElem> subgroup_elems;
  for (uint32_t s = 0; s < ring.order(); ++s) {
    if (subgroup[s]) subgroup_elems.push_back({s});
  }
  std::vector<bool> covered(ring.order(), false);
  std::vector<RgElem> reps;
  for (RgElem u : units) {
    if (covered[u.code]) continue;
    reps.push_back(u);
    for (RgElem s : subgroup_elems) covered[ring.mul(u, s).code] = true;
  }
  return reps;
}

std::vector<RgElem> s_subgroup(const QuotientRing& ring) {
  std::vector<RgElem> out;
  for (RgElem u : ring.units()) {
    const RgElem sq = ring.mul(u, u);
    if (ring.is_constant(sq) && sq.code != 0) out.push_back(u);
  }
  return out;
}

}  // namespace congraph
