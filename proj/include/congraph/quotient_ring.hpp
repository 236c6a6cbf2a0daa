#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "congraph/factor.hpp"
#include "congraph/field.hpp"
#include "congraph/poly.hpp"

namespace congraph {

/// Element of R_g = F_q[t]/(g). The code of the reduced representative
/// sum c_i t^i (deg < n) is sum code(c_i) q^i.
struct RgElem {
  uint32_t code = 0;

  constexpr auto operator<=>(const RgElem&) const = default;
};

class QuotientRing;
using RingPtr = std::shared_ptr<const QuotientRing>;

/// The finite ring F_q[t]/(g) for monic g of degree n >= 1.
///
/// Rings with at most kTableOrder elements carry full addition and
/// multiplication tables; larger rings multiply digit arrays directly.
class QuotientRing {
 public:
  static constexpr uint64_t kMaxOrder = uint64_t{1} << 31;
  static constexpr uint32_t kTableOrder = 1024;

  /// Throws std::invalid_argument for non-monic or constant g, or when
  /// q^n exceeds kMaxOrder.
  static RingPtr create(FieldPtr field, const Poly& g);

  const Field& field() const { return *field_; }
  const FieldPtr& field_ptr() const { return field_; }
  const Poly& modulus() const { return g_; }
  const Factorization& factorization() const { return factorization_; }
  int degree() const { return n_; }
  uint32_t order() const { return order_; }
  bool has_tables() const { return !mul_.empty(); }

  RgElem zero() const { return {0}; }
  RgElem one() const { return {1}; }
  RgElem from_code(uint32_t code) const;
  RgElem from_field(FieldElem c) const { return {c.code}; }
  RgElem from_poly(const Poly& f) const;
  Poly to_poly(RgElem x) const;
  /// True iff x lies in the image of F_q.
  bool is_constant(RgElem x) const { return x.code < field_->order(); }

  RgElem add(RgElem a, RgElem b) const {
    if (has_tables()) return {add_[size_t{a.code} * order_ + b.code]};
    return add_slow(a, b);
  }
  RgElem neg(RgElem a) const {
    if (has_tables()) return {neg_[a.code]};
    return neg_slow(a);
  }
  RgElem sub(RgElem a, RgElem b) const { return add(a, neg(b)); }
  RgElem mul(RgElem a, RgElem b) const {
    if (has_tables()) return {mul_[size_t{a.code} * order_ + b.code]};
    return mul_slow(a, b);
  }
  bool is_unit(RgElem a) const;
  /// Throws std::domain_error for non-units.
  RgElem inv(RgElem a) const;
  RgElem pow(RgElem a, uint64_t e) const;

  std::vector<RgElem> elements() const;
  /// Units in code order: elements divisible by no prime factor of g.
  std::vector<RgElem> units() const;

  std::string to_string(RgElem x) const { return to_poly(x).to_string(); }
  RgElem parse(std::string_view text) const { return from_poly(Poly::parse(field_, text)); }

  /// Raw tables for hot loops; empty when has_tables() is false.
  const uint16_t* mul_table() const { return mul_.data(); }
  const uint16_t* add_table() const { return add_.data(); }

 private:
  QuotientRing(FieldPtr field, Poly g);

  RgElem add_slow(RgElem a, RgElem b) const;
  RgElem neg_slow(RgElem a) const;
  RgElem mul_slow(RgElem a, RgElem b) const;
  RgElem inv_slow(RgElem a) const;
  bool is_unit_slow(RgElem a) const;

  static constexpr int kMaxDigits = 32;
  using Digits = std::array<uint32_t, 2 * kMaxDigits>;
  void decode(RgElem x, Digits& out) const;
  RgElem encode(const Digits& d) const;

  FieldPtr field_;
  Poly g_;
  Factorization factorization_;
  int n_;
  uint32_t order_;
  std::vector<uint16_t> add_;
  std::vector<uint16_t> mul_;
  std::vector<uint16_t> neg_;
  std::vector<uint16_t> inv_;  // 0 marks a non-unit
  std::vector<uint32_t> g_digits_;
  std::vector<std::vector<uint32_t>> prime_digits_;
};

/// |R_g^x| = q^n prod_i (1 - q^{-d_i}), evaluated exactly.
uint64_t unit_group_order(const QuotientRing& ring);

/// |R_g^x : F_q^x (R_g^x)^2| from the closed form prod_i q^{d_i floor(n_i/2)}
/// for even q. For odd q with r distinct prime factors of degrees d_i it is
/// 2^r when every d_i is even and 2^(r-1) otherwise; in particular 1 when g
/// is a power of one odd-degree irreducible.
uint64_t square_class_index_closed_form(const QuotientRing& ring);

/// The same index by enumerating squares; nullopt above the unit cap.
std::optional<uint64_t> square_class_index_brute_force(const QuotientRing& ring,
                                                       uint64_t unit_cap = uint64_t{1} << 20);

struct SquareClassIndex {
  uint64_t value = 0;
  bool brute_force_checked = false;
};

/// Closed form, cross-checked by brute force within the cap. Throws
/// std::logic_error if the two disagree.
SquareClassIndex square_class_index(const QuotientRing& ring);

/// One unit per coset of F_q^x (R_g^x)^2, the least code in each.
std::vector<RgElem> square_class_representatives(const QuotientRing& ring);

/// S = {a in R_g^x : a^2 in F_q^x}, in code order.
std::vector<RgElem> s_subgroup(const QuotientRing& ring);

}  // namespace congraph
