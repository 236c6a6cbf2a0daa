#include "congraph/snf.hpp"

namespace congraph {

PolyMat2 PolyMat2::identity(const FieldPtr& field) {
  return {Poly::constant(field, FieldElem{1}), Poly(field), Poly(field), Poly::constant(field, FieldElem{1})};
}

PolyMat2 PolyMat2::zero(const FieldPtr& field) { return {Poly(field), Poly(field), Poly(field), Poly(field)}; }

std::string PolyMat2::to_string() const {
  return "[[" + a.to_string() + "," + b.to_string() + "],[" + c.to_string() + "," + d.to_string() + "]]";
}

PolyMat2 operator*(const PolyMat2& x, const PolyMat2& y) {
  return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}

namespace {

class Reducer {
 public:
  Reducer(const PolyMat2& A, const FieldPtr& field)
      : field_(field), M_(A), U_(PolyMat2::identity(field)), V_(PolyMat2::identity(field)) {}

  SmithForm2 run() {
    for (;;) {
      if (M_.a.is_zero() && M_.b.is_zero() && M_.c.is_zero() && M_.d.is_zero()) break;
      move_pivot_to_corner();
      if (!M_.c.is_zero()) row_op(PolyMat2{one(), zero(), -(M_.c / M_.a), one()});
      if (!M_.b.is_zero()) col_op(PolyMat2{one(), -(M_.b / M_.a), zero(), one()});
      if (!M_.b.is_zero() || !M_.c.is_zero()) continue;
      if (divides(M_.a, M_.d)) break;
      // Bring d into the first row; its remainder mod a becomes the next pivot.
      row_op(PolyMat2{one(), one(), zero(), one()});
    }
    if (!M_.a.is_zero() && !M_.a.is_monic()) {
      const FieldElem lam = M_.a.lead();
      const FieldElem lam_inv = field_->inv(lam);
      row_op(PolyMat2{Poly::constant(field_, lam_inv), zero(), zero(), Poly::constant(field_, lam)});
    }
    return {U_, M_, V_};
  }

 private:
  Poly one() const { return Poly::constant(field_, FieldElem{1}); }
  Poly zero() const { return Poly(field_); }

  void row_op(const PolyMat2& E) {
    M_ = E * M_;
    U_ = E * U_;
  }
  void col_op(const PolyMat2& F) {
    M_ = M_ * F;
    V_ = V_ * F;
  }

  void move_pivot_to_corner() {
    const Poly* entries[4] = {&M_.a, &M_.b, &M_.c, &M_.d};
    int best = -1;
    for (int i = 0; i < 4; ++i) {
      if (entries[i]->is_zero()) continue;
      if (best < 0 || entries[i]->degree() < entries[best]->degree()) best = i;
    }
    if (best >= 2) row_op(PolyMat2{zero(), one(), -one(), zero()});
    if (best % 2 == 1) col_op(PolyMat2{zero(), -one(), one(), zero()});
  }

  FieldPtr field_;
  PolyMat2 M_;
  PolyMat2 U_;
  PolyMat2 V_;
};

}  // namespace

SmithForm2 snf_2x2(const PolyMat2& A) { return Reducer(A, A.a.field_ptr()).run(); }

}  // namespace congraph
