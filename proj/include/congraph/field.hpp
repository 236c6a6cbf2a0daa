#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <vector>

namespace congraph {

/// Element of a finite field, stored as its integer code.
///
/// An element c_0 + c_1 x + ... + c_{k-1} x^{k-1} of F_{p^k} (x the class of
/// the generator modulo the field's defining polynomial) has code
/// sum c_i p^i. Codes are therefore base-p digit strings, stable across
/// runs and independent of any in-memory layout.
struct FieldElem {
  uint32_t code = 0;

  constexpr auto operator<=>(const FieldElem&) const = default;
};

class Field;
using FieldPtr = std::shared_ptr<const Field>;

/// The finite field F_{p^k} with full operation tables.
///
/// Immutable after construction; share it through FieldPtr.
class Field {
 public:
  /// Largest supported field order. Operation tables are q*q entries.
  static constexpr uint32_t kMaxOrder = 1024;

  static FieldPtr create(uint32_t p, uint32_t k);
  /// q must be a prime power.
  static FieldPtr create_order(uint32_t q);

  uint32_t characteristic() const { return p_; }
  uint32_t degree() const { return k_; }
  uint32_t order() const { return q_; }

  /// Coefficients (c_0, ..., c_k) of the monic defining polynomial over
  /// F_p; empty for prime fields.
  const std::vector<uint32_t>& modulus() const { return modulus_; }

  FieldElem zero() const { return {0}; }
  FieldElem one() const { return {1}; }
  FieldElem from_code(uint32_t code) const;
  /// Image of the integer m under Z -> F_p -> F_q.
  FieldElem from_int(int64_t m) const;

  FieldElem add(FieldElem a, FieldElem b) const { return {add_[a.code * q_ + b.code]}; }
  FieldElem sub(FieldElem a, FieldElem b) const { return add(a, neg(b)); }
  FieldElem neg(FieldElem a) const { return {neg_[a.code]}; }
  FieldElem mul(FieldElem a, FieldElem b) const { return {mul_[a.code * q_ + b.code]}; }
  /// Throws std::domain_error for zero.
  FieldElem inv(FieldElem a) const;
  FieldElem div(FieldElem a, FieldElem b) const { return mul(a, inv(b)); }
  FieldElem pow(FieldElem a, uint64_t e) const;

  /// All q elements in code order.
  std::vector<FieldElem> elements() const;
  /// Nonzero elements in code order.
  std::vector<FieldElem> units() const;
  /// Smallest-code generator of the multiplicative group.
  FieldElem primitive_element() const { return primitive_; }
  /// The elements x^0, ..., x^{k-1}: an F_p-basis of F_q.
  std::vector<FieldElem> prime_basis() const;

 private:
  Field(uint32_t p, uint32_t k, std::vector<uint32_t> modulus);

  uint32_t p_;
  uint32_t k_;
  uint32_t q_;
  std::vector<uint32_t> modulus_;
  std::vector<uint16_t> add_;
  std::vector<uint16_t> mul_;
  std::vector<uint16_t> neg_;
  std::vector<uint16_t> inv_;
  FieldElem primitive_;
};

bool is_prime(uint64_t n);

/// Lexicographically least monic irreducible of degree k over F_p, ordered
/// by the coefficient tuple (c_0, c_1, ...). Returns c_0..c_k.
std::vector<uint32_t> least_irreducible(uint32_t p, uint32_t k);

}  // namespace congraph
