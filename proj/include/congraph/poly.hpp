#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "congraph/field.hpp"

namespace congraph {

/// Dense univariate polynomial over a finite field, in the variable t.
///
/// Coefficients are stored lowest degree first with no trailing zeros, so
/// the zero polynomial has an empty coefficient list and degree kZeroDegree.
class Poly {
 public:
  static constexpr int kZeroDegree = -1;

  explicit Poly(FieldPtr field) : field_(std::move(field)) {}
  Poly(FieldPtr field, std::vector<FieldElem> coeffs);

  static Poly constant(FieldPtr field, FieldElem c);
  static Poly monomial(FieldPtr field, FieldElem c, int exponent);
  static Poly variable(FieldPtr field) { return monomial(std::move(field), FieldElem{1}, 1); }
  /// Polynomial whose coefficient codes are the base-q digits of code.
  static Poly from_code(FieldPtr field, uint64_t code);

  /// Parses `c*t^e + ...`. Coefficients are field codes; a leading '-' on
  /// a term negates it. Whitespace is ignored.
  static Poly parse(FieldPtr field, std::string_view text);

  const Field& field() const { return *field_; }
  const FieldPtr& field_ptr() const { return field_; }

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_constant() const { return coeffs_.size() <= 1; }
  bool is_monic() const { return !coeffs_.empty() && coeffs_.back().code == 1; }
  FieldElem coeff(int i) const;
  FieldElem lead() const { return coeff(degree()); }
  const std::vector<FieldElem>& coeffs() const { return coeffs_; }

  /// sum c_i q^i. Orders polynomials of equal degree by their coefficients
  /// from the top down. Requires q^(deg+1) to fit in 64 bits.
  uint64_t code() const;

  std::string to_string() const;

  friend bool operator==(const Poly& a, const Poly& b) { return a.coeffs_ == b.coeffs_; }

 private:
  void normalize();

  FieldPtr field_;
  std::vector<FieldElem> coeffs_;
};

Poly operator+(const Poly& a, const Poly& b);
Poly operator-(const Poly& a, const Poly& b);
Poly operator-(const Poly& a);
Poly operator*(const Poly& a, const Poly& b);
Poly scale(const Poly& a, FieldElem c);

struct DivRem {
  Poly quotient;
  Poly remainder;
};

/// Throws std::domain_error when the divisor is zero.
DivRem divrem(const Poly& a, const Poly& b);
Poly operator/(const Poly& a, const Poly& b);
Poly operator%(const Poly& a, const Poly& b);
bool divides(const Poly& d, const Poly& a);

/// Scales a nonzero polynomial to be monic; zero stays zero.
Poly make_monic(const Poly& a);

/// Monic gcd; gcd(0, 0) = 0.
Poly gcd(const Poly& a, const Poly& b);

struct Xgcd {
  Poly gcd;
  Poly u;
  Poly v;
};

/// u*a + v*b = gcd with gcd monic (or zero when a = b = 0).
Xgcd xgcd(const Poly& a, const Poly& b);

Poly derivative(const Poly& a);
FieldElem eval(const Poly& a, FieldElem x);
/// a(t + c).
Poly compose_shift(const Poly& a, FieldElem c);
Poly pow(const Poly& a, unsigned e);

/// All monic polynomials of degree d in increasing code order.
std::vector<Poly> monic_polys(const FieldPtr& field, int degree);

}  // namespace congraph
