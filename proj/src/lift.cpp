#include "congraph/lift.hpp"

#include <stdexcept>

namespace congraph {

Mat2 reduce(const QuotientRing& ring, const PolyMat2& m) {
  return Mat2{{ring.from_poly(m.a), ring.from_poly(m.b), ring.from_poly(m.c), ring.from_poly(m.d)}};
}

PolyMat2 lift_entries(const QuotientRing& ring, const Mat2& m) {
  return {ring.to_poly(m.e[0]), ring.to_poly(m.e[1]), ring.to_poly(m.e[2]), ring.to_poly(m.e[3])};
}

PolyMat2 sl2_lift(const QuotientRing& ring, const Mat2& m) {
  const RgElem det = ring.sub(ring.mul(m.e[0], m.e[3]), ring.mul(m.e[1], m.e[2]));
  if (det != ring.one()) {
    throw std::invalid_argument("cannot lift: determinant " + ring.to_string(det) + " is not 1");
  }
  const FieldPtr& field = ring.field_ptr();
  const SmithForm2 snf = snf_2x2(lift_entries(ring, m));
  const Poly& a = snf.D.a;
  const Poly& d = snf.D.d;
  const Poly one = Poly::constant(field, FieldElem{1});
  const Poly two = Poly::constant(field, field->from_int(2));
  const Poly ad = a * d;
  const PolyMat2 B{a, ad - one, one - ad, two * d - ad * d};
  // U and V have determinant 1, so their adjugates are their inverses.
  PolyMat2 lifted = snf.U.adjugate() * B * snf.V.adjugate();
  if (lifted.det() == one && reduce(ring, lifted) == m) return lifted;
  throw std::logic_error("sl2 lift failed self-check for " + lifted.to_string());
}

}  // namespace congraph
