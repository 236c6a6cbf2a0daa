#pragma once

#include "congraph/matrix_group.hpp"
#include "congraph/snf.hpp"

namespace congraph {

/// Entrywise reduction F_q[t] -> R_g.
Mat2 reduce(const QuotientRing& ring, const PolyMat2& m);

/// Entrywise lift R_g -> F_q[t] by reduced representatives.
PolyMat2 lift_entries(const QuotientRing& ring, const Mat2& m);

/// A matrix of SL2(F_q[t]) reducing to m modulo g.
///
/// With U A V = diag(a, d) from snf_2x2 of the entrywise lift A, ad = 1 mod g
/// and B = [[a, ad-1], [1-ad, 2d-ad^2]] has determinant 1 and B = U A V mod g,
/// so U^{-1} B V^{-1} is the lift. Throws std::invalid_argument when
/// det m != 1.
PolyMat2 sl2_lift(const QuotientRing& ring, const Mat2& m);

}  // namespace congraph
