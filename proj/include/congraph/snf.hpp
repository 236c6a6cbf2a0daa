#pragma once

#include <string>

#include "congraph/poly.hpp"

namespace congraph {

/// 2x2 matrix over F_q[t], row-major entries [[a, b], [c, d]].
struct PolyMat2 {
  Poly a, b, c, d;

  static PolyMat2 identity(const FieldPtr& field);
  static PolyMat2 zero(const FieldPtr& field);

  Poly det() const { return a * d - b * c; }
  /// Adjugate; the inverse when det = 1.
  PolyMat2 adjugate() const { return {d, -b, -c, a}; }
  bool is_diagonal() const { return b.is_zero() && c.is_zero(); }
  std::string to_string() const;

  friend bool operator==(const PolyMat2&, const PolyMat2&) = default;
};

PolyMat2 operator*(const PolyMat2& x, const PolyMat2& y);

/// U * A * V = D with det U = det V = 1 and D = diag(d1, d2), d1 | d2,
/// d1 monic or zero.
struct SmithForm2 {
  PolyMat2 U;
  PolyMat2 D;
  PolyMat2 V;
};

/// Euclidean pivot reduction using determinant-one row and column
/// operations only. Pivot: lowest-degree nonzero entry, first in row-major
/// order on ties.
SmithForm2 snf_2x2(const PolyMat2& A);

}  // namespace congraph
