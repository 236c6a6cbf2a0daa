#include <random>

#include "congraph/factor.hpp"
#include "congraph/field.hpp"
#include "congraph/poly.hpp"
#include "congraph/snf.hpp"
#include "doctest.h"

using namespace congraph;

namespace {

Poly P(const FieldPtr& f, const char* text) { return Poly::parse(f, text); }

Poly random_poly(const FieldPtr& f, std::mt19937_64& rng, int max_deg) {
  std::uniform_int_distribution<int> deg_dist(-1, max_deg);
  std::uniform_int_distribution<uint32_t> coef(0, f->order() - 1);
  const int deg = deg_dist(rng);
  std::vector<FieldElem> c(static_cast<size_t>(deg + 1));
  for (auto& x : c) x = FieldElem{coef(rng)};
  return Poly(f, std::move(c));
}

}  // namespace

TEST_CASE("field creation") {
  auto f2 = Field::create(2, 1);
  CHECK(f2->order() == 2);
  CHECK(f2->modulus().empty());

  auto f3 = Field::create(3, 1);
  CHECK(f3->order() == 3);

  // Oracle: the monic quadratics over F_2 without a root; exactly one exists.
  std::vector<std::vector<uint32_t>> rootless;
  for (uint32_t c0 = 0; c0 < 2; ++c0) {
    for (uint32_t c1 = 0; c1 < 2; ++c1) {
      bool has_root = false;
      for (uint32_t x = 0; x < 2; ++x) has_root |= ((c0 + c1 * x + x * x) % 2 == 0);
      if (!has_root) rootless.push_back({c0, c1, 1});
    }
  }
  REQUIRE(rootless.size() == 1);
  auto f4 = Field::create(2, 2);
  CHECK(f4->modulus() == rootless[0]);
  CHECK(f4->modulus() == std::vector<uint32_t>{1, 1, 1});

  // Least under (c_0, c_1, c_2): x^3 + x^2 + 1 precedes x^3 + x + 1.
  CHECK(Field::create(2, 3)->modulus() == std::vector<uint32_t>{1, 0, 1, 1});

  CHECK_THROWS_AS(Field::create(4, 1), std::invalid_argument);
  CHECK_THROWS_AS(Field::create(2, 0), std::invalid_argument);
  CHECK_THROWS_AS(Field::create(2, 11), std::invalid_argument);
  CHECK(Field::create_order(8)->degree() == 3);
  CHECK_THROWS_AS(Field::create_order(6), std::invalid_argument);
}

TEST_CASE("field arithmetic examples") {
  auto f2 = Field::create(2, 1);
  CHECK(f2->add(FieldElem{1}, FieldElem{1}) == FieldElem{0});
  auto f4 = Field::create(2, 2);
  CHECK(f4->mul(FieldElem{2}, FieldElem{2}) == FieldElem{3});
  CHECK(f4->inv(FieldElem{2}) == FieldElem{3});
  CHECK_THROWS_AS(f4->inv(FieldElem{0}), std::domain_error);
}

TEST_CASE("field axioms hold exhaustively for small orders") {
  for (uint32_t q : {2u, 3u, 4u, 5u, 7u, 8u, 9u, 11u, 16u, 25u, 27u, 32u, 49u, 64u}) {
    CAPTURE(q);
    auto f = Field::create_order(q);
    const auto elems = f->elements();
    bool ok = true;
    for (FieldElem a : elems) {
      ok &= f->pow(a, q) == a;
      ok &= f->add(a, f->neg(a)) == f->zero();
      if (a.code != 0) ok &= f->mul(a, f->inv(a)) == f->one();
    }
    CHECK(ok);
    std::mt19937_64 rng(q);
    std::uniform_int_distribution<uint32_t> pick(0, q - 1);
    const int trials = q <= 16 ? 0 : 20000;
    if (q <= 16) {
      for (FieldElem a : elems)
        for (FieldElem b : elems)
          for (FieldElem c : elems) ok &= f->mul(f->add(a, b), c) == f->add(f->mul(a, c), f->mul(b, c));
    }
    for (int t = 0; t < trials; ++t) {
      FieldElem a{pick(rng)}, b{pick(rng)}, c{pick(rng)};
      ok &= f->mul(f->add(a, b), c) == f->add(f->mul(a, c), f->mul(b, c));
      ok &= f->mul(f->mul(a, b), c) == f->mul(a, f->mul(b, c));
    }
    CHECK(ok);
    // The primitive element generates all units.
    FieldElem x = f->one();
    uint32_t order = 0;
    do {
      x = f->mul(x, f->primitive_element());
      ++order;
    } while (x != f->one());
    CHECK(order == q - 1);
  }
}

TEST_CASE("polynomial arithmetic examples") {
  auto f2 = Field::create(2, 1);
  CHECK(gcd(P(f2, "t^2"), P(f2, "t^3")) == P(f2, "t^2"));
  const Xgcd x = xgcd(P(f2, "t"), P(f2, "t+1"));
  CHECK(x.gcd == P(f2, "1"));
  CHECK(x.u == P(f2, "1"));
  CHECK(x.v == P(f2, "1"));
  CHECK(pow(P(f2, "t+1"), 2) == P(f2, "t^2+1"));
  CHECK_THROWS_AS(divrem(P(f2, "t"), Poly(f2)), std::domain_error);
  CHECK(Poly(f2).degree() == Poly::kZeroDegree);

  auto f3 = Field::create(3, 1);
  CHECK(derivative(P(f3, "t^3+2*t^2+t")) == P(f3, "t+1"));
  CHECK(eval(P(f3, "t^2+1"), FieldElem{1}) == FieldElem{2});
  CHECK(compose_shift(P(f3, "t^2"), FieldElem{1}) == P(f3, "t^2+2*t+1"));
}

TEST_CASE("polynomial text syntax") {
  auto f4 = Field::create(2, 2);
  const Poly p = P(f4, "2*t^2+3*t+1");
  CHECK(p.degree() == 2);
  CHECK(p.coeff(2) == FieldElem{2});
  CHECK(p.to_string() == "2*t^2+3*t+1");
  CHECK(P(f4, " t ^ 2 + t ").to_string() == "t^2+t");
  CHECK(Poly(f4).to_string() == "0");
  auto f3 = Field::create(3, 1);
  CHECK(P(f3, "-1") == P(f3, "2"));
  CHECK(P(f3, "t-1").to_string() == "t+2");
  CHECK_THROWS_AS(P(f4, "4*t"), std::invalid_argument);
  CHECK_THROWS_AS(P(f4, "t^"), std::invalid_argument);
  CHECK_THROWS_AS(P(f4, "x^2"), std::invalid_argument);
  CHECK_THROWS_AS(P(f4, ""), std::invalid_argument);

  std::mt19937_64 rng(7);
  for (uint32_t q : {2u, 3u, 4u, 9u}) {
    auto f = Field::create_order(q);
    for (int i = 0; i < 300; ++i) {
      const Poly r = random_poly(f, rng, 9);
      CHECK(Poly::parse(f, r.to_string()) == r);
    }
  }
}

TEST_CASE("divrem and xgcd identities on random inputs") {
  std::mt19937_64 rng(11);
  for (uint32_t q : {2u, 3u, 4u, 5u}) {
    auto f = Field::create_order(q);
    for (int i = 0; i < 300; ++i) {
      const Poly a = random_poly(f, rng, 8);
      const Poly b = random_poly(f, rng, 5);
      if (!b.is_zero()) {
        const DivRem qr = divrem(a, b);
        CHECK(qr.quotient * b + qr.remainder == a);
        CHECK(qr.remainder.degree() < b.degree());
      }
      const Xgcd x = xgcd(a, b);
      CHECK(x.u * a + x.v * b == x.gcd);
      if (!x.gcd.is_zero()) {
        CHECK(x.gcd.is_monic());
        CHECK(divides(x.gcd, a));
        CHECK(divides(x.gcd, b));
      }
    }
  }
}

TEST_CASE("factorization examples") {
  auto f2 = Field::create(2, 1);
  const Factorization a = factor(P(f2, "t^2+1"));
  REQUIRE(a.factors.size() == 1);
  CHECK(a.factors[0].prime == P(f2, "t+1"));
  CHECK(a.factors[0].multiplicity == 2);

  const Factorization b = factor(P(f2, "t^2+t+1"));
  REQUIRE(b.factors.size() == 1);
  CHECK(b.factors[0].prime == P(f2, "t^2+t+1"));
  CHECK(b.factors[0].multiplicity == 1);

  const Factorization c = factor(P(f2, "t^2"));
  REQUIRE(c.factors.size() == 1);
  CHECK(c.factors[0].prime == P(f2, "t"));
  CHECK(c.factors[0].multiplicity == 2);

  const Factorization d = factor(P(f2, "t^3+t^2"));
  REQUIRE(d.factors.size() == 2);
  CHECK(d.factors[0].prime == P(f2, "t"));
  CHECK(d.factors[0].multiplicity == 2);
  CHECK(d.factors[1].prime == P(f2, "t+1"));

  auto f3 = Field::create(3, 1);
  const Factorization e = factor(P(f3, "2*t^2+2"));
  CHECK(e.unit == FieldElem{2});
  CHECK(e.product(f3) == P(f3, "2*t^2+2"));

  CHECK_THROWS_AS(factor(Poly(f2)), std::invalid_argument);
}

TEST_CASE("factorization reconstructs every monic polynomial up to degree 8") {
  for (uint32_t q : {2u, 3u, 4u}) {
    CAPTURE(q);
    auto f = Field::create_order(q);
    bool ok = true;
    for (int deg = 1; deg <= 8; ++deg) {
      for (const Poly& m : monic_polys(f, deg)) {
        const Factorization fac = factor(m);
        ok &= fac.product(f) == m;
        int total = 0;
        for (size_t i = 0; i < fac.factors.size(); ++i) {
          ok &= fac.factors[i].prime.is_monic() && fac.factors[i].multiplicity >= 1;
          total += fac.factors[i].prime.degree() * fac.factors[i].multiplicity;
          if (i > 0) ok &= !(fac.factors[i].prime == fac.factors[i - 1].prime);
        }
        ok &= total == deg;
      }
    }
    CHECK(ok);
  }
}

TEST_CASE("squarefree test") {
  auto f2 = Field::create(2, 1);
  CHECK_FALSE(is_squarefree(P(f2, "t^2")));
  CHECK(is_squarefree(P(f2, "t^2+t")));
  CHECK_FALSE(is_squarefree(P(f2, "t^2+1")));
  CHECK(is_squarefree(P(f2, "1")));
  CHECK_THROWS_AS(is_squarefree(Poly(f2)), std::invalid_argument);

  for (uint32_t q : {2u, 3u}) {
    auto f = Field::create_order(q);
    bool ok = true;
    for (int deg = 1; deg <= 6; ++deg) {
      for (const Poly& m : monic_polys(f, deg)) ok &= is_squarefree(m) == factor(m).is_squarefree();
    }
    CHECK(ok);
  }
}

TEST_CASE("2x2 Smith normal form examples") {
  auto f2 = Field::create(2, 1);
  const PolyMat2 I = PolyMat2::identity(f2);
  const SmithForm2 id = snf_2x2(I);
  CHECK(id.U == I);
  CHECK(id.D == I);
  CHECK(id.V == I);

  const PolyMat2 A{P(f2, "t"), Poly(f2), Poly(f2), P(f2, "1")};
  const SmithForm2 s = snf_2x2(A);
  CHECK(s.D == PolyMat2{P(f2, "1"), Poly(f2), Poly(f2), P(f2, "t")});
  CHECK(s.U * A * s.V == s.D);
  CHECK(s.U.det() == P(f2, "1"));
  CHECK(s.V.det() == P(f2, "1"));

  auto f3 = Field::create(3, 1);
  const PolyMat2 B{P(f3, "t"), P(f3, "t"), P(f3, "t"), Poly(f3)};
  const SmithForm2 r = snf_2x2(B);
  CHECK(r.U * B * r.V == r.D);
  CHECK(r.D.is_diagonal());
  CHECK(r.D.a == P(f3, "t"));
  // det is preserved: d1 d2 = det B = -t^2.
  CHECK(r.D.a * r.D.d == B.det());
}

TEST_CASE("2x2 Smith normal form on random matrices") {
  std::mt19937_64 rng(2024);
  for (uint32_t q : {2u, 3u, 4u, 5u}) {
    CAPTURE(q);
    auto f = Field::create_order(q);
    const Poly one = Poly::constant(f, FieldElem{1});
    bool ok = true;
    for (int i = 0; i < 500; ++i) {
      const PolyMat2 A{random_poly(f, rng, 4), random_poly(f, rng, 4), random_poly(f, rng, 4), random_poly(f, rng, 4)};
      const SmithForm2 s = snf_2x2(A);
      ok &= s.U * A * s.V == s.D;
      ok &= s.U.det() == one && s.V.det() == one;
      ok &= s.D.is_diagonal();
      ok &= s.D.a.is_zero() || s.D.a.is_monic();
      ok &= divides(s.D.a, s.D.d);
    }
    CHECK(ok);
  }
}
