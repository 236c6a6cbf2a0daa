#include "congraph/analysis.hpp"

#include "doctest.h"
#include "json.hpp"
#include "oracles.hpp"

using namespace congraph;

namespace {

RingPtr ring(uint32_t q, const char* g) {
  auto f = Field::create_order(q);
  return QuotientRing::create(f, Poly::parse(f, g));
}

LevelledGraph build01(Variant v, uint32_t q, const char* g) {
  BuildOptions o;
  o.max_level = 1;
  return build_graph(MatrixGroup::create(v, ring(q, g)), o);
}

}  // namespace

TEST_CASE("formula report examples") {
  const FormulaReport a = formula_report(*ring(2, "t^2"));
  CHECK(a.gl2_order == 96);
  CHECK(a.sl2_order == 48);
  CHECK(a.unit_order == 2);
  CHECK(a.pi_q == Rational(3, 4));
  CHECK(a.level_sizes == std::vector<BigInt>{8, 12, 12});

  const FormulaReport b = formula_report(*ring(2, "t^3"));
  CHECK(b.level_sizes == std::vector<BigInt>{64, 96, 48, 48});
  CHECK(b.cusp_count == 48);

  const FormulaReport c = formula_report(*ring(2, "t"));
  CHECK(c.level_sizes == std::vector<BigInt>{1, 3});
  CHECK(c.cusp_count == 3);
  // The 2n-2 exponent gives 3/2 cusps here.
  CHECK(c.ray_level_size_2n_minus_2 == Rational(3, 2));

  const FormulaReport d = formula_report(*ring(3, "t^2"));
  CHECK(d.level_sizes[0] == 27);
  CHECK(d.level_sizes[1] == 36);
  CHECK(to_string(d.pi_q) == "8/9");
}

TEST_CASE("formula orders match counting for small rings") {
  // Every monic modulus for q <= 4 up to degree 4 and for q in {5, 7} up to
  // degree 3, then one ring per factorization shape at 2^12 elements.
  std::vector<RingPtr> rings;
  for (auto [q, top] : {std::pair{2u, 4}, std::pair{3u, 4}, std::pair{4u, 4}, std::pair{5u, 3}, std::pair{7u, 3}}) {
    auto f = Field::create_order(q);
    for (int d = 1; d <= top; ++d)
      for (const Poly& g : monic_polys(f, d)) rings.push_back(QuotientRing::create(f, g));
  }
  for (auto [q, g] : {std::pair{2u, "t^12"}, std::pair{2u, "t^12+t^3+1"}, std::pair{4u, "t^6+t"},
                      std::pair{8u, "t^4+t^2"}, std::pair{16u, "t^3"}, std::pair{64u, "t^2+t"}}) {
    rings.push_back(ring(q, g));
  }
  for (const RingPtr& R : rings) {
    CAPTURE(R->field().order());
    CAPTURE(R->modulus().to_string());
    const FormulaReport f = formula_report(*R);
    const oracle::GroupCounts c = oracle::group_counts(*R);
    CHECK(f.unit_order == c.units);
    CHECK(f.sl2_order == c.sl2);
    CHECK(f.gl2_order == c.gl2);
  }
}

TEST_CASE("formula level sizes match enumerated subgroups and built graphs") {
  for (auto [q, g] : {std::pair{2u, "t"}, std::pair{2u, "t^2"}, std::pair{2u, "t^3"}, std::pair{3u, "t^2"},
                      std::pair{3u, "t^2+t"}, std::pair{4u, "t^2+t+1"}, std::pair{2u, "t^4"}, std::pair{5u, "t^2"}}) {
    CAPTURE(q);
    CAPTURE(g);
    const RingPtr R = ring(q, g);
    const FormulaReport f = formula_report(*R);
    const GroupPtr G = MatrixGroup::create(Variant::Sl2, R);
    const int n = R->degree();
    for (int i = 0; i < n; ++i) CHECK(f.level_sizes[static_cast<size_t>(i)] * G->subgroup(i).size() == G->order());
    CHECK(f.level_sizes[static_cast<size_t>(n)] * G->ray_subgroup().size() == G->order());
    const LevelledGraph built = build_graph(G);
    for (int i = 0; i < n; ++i) CHECK(f.level_sizes[static_cast<size_t>(i)] == built.level_size(i));
    CHECK(f.cusp_count == built.cusp_count);
  }
}

TEST_CASE("conjecture values") {
  CHECK(conjecture_values(2, 3).c == BigInt(4));
  CHECK(conjecture_values(2, 3).c_tilde == BigInt(8));
  CHECK(conjecture_values(2, 7).c_tilde == BigInt(1024));
  CHECK(conjecture_values(4, 2).c_tilde == BigInt(4));
  CHECK(conjecture_values(8, 5).c_tilde == BigInt(64));
  CHECK(conjecture_values(3, 2).c_tilde == BigInt(1));
  CHECK_FALSE(conjecture_values(2, 2).c);
  CHECK_FALSE(conjecture_values(2, 2).c_tilde);
}

TEST_CASE("t^n component rows") {
  struct Expect {
    uint32_t q;
    int n;
    uint64_t c, ct;
  };
  for (Expect e : {Expect{2, 2, 1, 2}, Expect{2, 3, 4, 8}, Expect{2, 4, 8, 16}, Expect{2, 5, 32, 64},
                   Expect{2, 6, 64, 128}, Expect{2, 7, 256, 1024}, Expect{4, 2, 1, 4}, Expect{4, 3, 1, 4},
                   Expect{8, 2, 1, 8}, Expect{3, 2, 1, 1}, Expect{3, 3, 1, 1}, Expect{5, 2, 1, 1}}) {
    CAPTURE(e.q);
    CAPTURE(e.n);
    const Table1Row row = table1_row(e.q, e.n);
    CHECK(row.method() == "both");
    CHECK(row.c.agree());
    CHECK(row.c_tilde.agree());
    CHECK(row.c.value() == e.c);
    CHECK(row.c_tilde.value() == e.ct);
    const ConjectureReport r = conjecture_check(row);
    CHECK(r.status == (e.q == 2 && e.n == 2 ? "CONJECTURE-NOT-APPLICABLE" : "CONJECTURE-CONSISTENT"));
    CHECK(r.odd_q_connectivity.has_value() == (e.q % 2 == 1));
  }
}

TEST_CASE("t^n component rows under tight budgets") {
  Table1Options closure_only{uint64_t{1} << 24, 0};
  CHECK(table1_row(2, 4, closure_only).method() == "closure");
  Table1Options graph_only{0, uint64_t{1} << 22};
  CHECK(table1_row(2, 4, graph_only).method() == "graph");

  // Too small for either route: marked incomplete, never filled in.
  const Table1Row row = table1_row(4, 3, {1000, 100});
  CHECK_FALSE(row.complete());
  CHECK(row.method() == "incomplete");
  CHECK_FALSE(row.c.value());
  CHECK(row.notes.size() == 4);
  CHECK(conjecture_check(row).status == "INCOMPLETE");
  CHECK_THROWS_AS(table1_row(2, 1), std::invalid_argument);
}

TEST_CASE("S/T identity") {
  SUBCASE("examples") {
    const StIdentityReport a = st_identity_check(*ring(2, "t^2"));
    CHECK(a.c == 1u);
    CHECK(a.square_class_index == 2);
    CHECK(a.c_tilde == 2u);
    CHECK(a.s_order == a.t_order);
    CHECK(a.holds());
    const StIdentityReport b = st_identity_check(*ring(4, "t^2"));
    CHECK(*b.lhs() == 4);
    CHECK(*b.rhs() == 4);
    const StIdentityReport c = st_identity_check(*ring(3, "t^2"));
    CHECK(c.c == c.c_tilde);
    CHECK(*c.lhs() == 1);
  }
  SUBCASE("grid") {
    for (uint32_t q : {2u, 3u, 4u, 5u}) {
      for (const char* g : {"t^2", "t^3", "t^2+t", "t^3+t^2"}) {
        CAPTURE(q);
        CAPTURE(g);
        const StIdentityReport r = st_identity_check(*ring(q, g));
        REQUIRE(r.complete());
        CHECK(r.holds());
        CHECK(r.t_order.value() >= 1);
      }
    }
  }
  SUBCASE("partial when the closure is capped") {
    const StIdentityReport r = st_identity_check(*ring(2, "t^3"), {10, uint64_t{1} << 22});
    CHECK_FALSE(r.complete());
    CHECK_FALSE(r.lhs());
    CHECK(r.c_tilde.has_value());
    CHECK(r.notes.size() == 1);
  }
}

TEST_CASE("parity statements") {
  const ParityEntry a = parity_entry(*ring(2, "t^2+t"));
  CHECK(a.squarefree);
  CHECK(a.xtilde_components == 1u);
  CHECK(a.connectivity_agrees() == true);

  const ParityEntry b = parity_entry(*ring(2, "t^2"));
  CHECK(b.xtilde_components == 2u);
  CHECK(b.even_strict_applies());
  CHECK(b.even_strict_holds() == true);

  const ParityEntry c = parity_entry(*ring(3, "t^2"));
  CHECK(c.odd_equal_applies());
  CHECK(c.c == 1u);
  CHECK(c.c_tilde == 1u);
  CHECK(c.odd_equal_holds() == true);

  // g = t^2 (t+1) at q = 2: not squarefree, yet C = C~ = 2. The element
  // a = 1 + t_i of the t^2 factor lifts to 1 + t + t^2, so the diagonal
  // diag(a, a) is not produced from H_1 and T stays trivial. The definition
  // oracle agrees below.
  const ParityEntry d = parity_entry(*ring(2, "t^3+t^2"));
  CHECK(d.even_strict_applies());
  CHECK(d.c == 2u);
  CHECK(d.c_tilde == 2u);
  CHECK(d.even_strict_holds() == false);
  const RingPtr dr = ring(2, "t^3+t^2");
  CHECK(subgraph_01(oracle::definition_graph(*dr, false)).component_count == 2);
  CHECK(subgraph_01(oracle::definition_graph(*dr, true)).component_count == 2);

  // q odd yet disconnected: F_3^x embeds diagonally in F_3^x x F_3^x.
  const ParityEntry e = parity_entry(*ring(3, "t^2+t"));
  CHECK(e.xtilde_components == 2u);
  CHECK(e.square_class_index == 2);
  CHECK(e.connectivity_agrees() == false);

  for (uint32_t q : {2u, 3u, 4u}) {
    for (const char* g : {"t", "t^2", "t^3", "t^2+t", "t^2+t+1"}) {
      CAPTURE(q);
      CAPTURE(g);
      const ParityEntry p = parity_entry(*ring(q, g));
      CHECK(p.xtilde_components == p.square_class_index);
      if (p.odd_equal_applies() && p.c) CHECK(p.odd_equal_holds() == true);
      if (p.even_strict_applies() && p.is_power_of_t) CHECK(p.even_strict_holds() == true);
    }
  }
}

TEST_CASE("vertex expansion bound") {
  SUBCASE("one component at q = 4, t^2 violates it") {
    const LevelledGraph d = build01(Variant::PglM, 4, "t^2");
    REQUIRE(d.component_count == 4);
    for (uint32_t label = 0; label < d.component_count; ++label) {
      const BoundReport r = morgenstern_bound_check(d, component_level1(d, label));
      CHECK(r.s_size == 20);
      CHECK(r.lhs == Rational(4, 5));
      CHECK(r.rhs == Rational(16, 17));
      CHECK(r.verdict() == "VIOLATED");
    }
  }
  SUBCASE("S = L_1 gives equality") {
    for (auto [v, q, g] : {std::tuple{Variant::PglM, 4u, "t^2"}, std::tuple{Variant::Sl2, 2u, "t^3"},
                           std::tuple{Variant::PglM, 2u, "t^3"}, std::tuple{Variant::PglBar, 3u, "t^2"},
                           std::tuple{Variant::PglM, 5u, "t^2"}, std::tuple{Variant::Sl2, 3u, "t^2+t"}}) {
      CAPTURE(q);
      CAPTURE(g);
      const LevelledGraph d = build01(v, q, g);
      std::vector<uint32_t> all;
      for (uint32_t x = d.level_start[1]; x < d.level_start[2]; ++x) all.push_back(x);
      const BoundReport r = morgenstern_bound_check(d, all);
      CHECK(r.lhs == Rational(q, q + 1));
      CHECK(r.verdict() == "EQUALITY");
    }
  }
  SUBCASE("empty and custom sets") {
    const LevelledGraph d = build01(Variant::Sl2, 2, "t^2");
    CHECK(morgenstern_bound_check(d, {}).verdict() == "VACUOUS");
    // One level-1 vertex: 2 neighbours; rhs = 2*12 / (-1 + 48) = 24/47.
    const BoundReport one = morgenstern_bound_check(d, {d.level_start[1]});
    CHECK(one.lhs == 2);
    CHECK(one.rhs == Rational(24, 47));
    CHECK(one.verdict() == "HOLDS");
    CHECK_THROWS_AS(morgenstern_bound_check(d, {0}), std::out_of_range);
    CHECK_THROWS_AS(morgenstern_bound_check(make_graph({1, 1}, {{0, 1}}), {1}), std::invalid_argument);
  }
}

TEST_CASE("report formatting") {
  CHECK(power_of_q(1, 2) == "1");
  CHECK(power_of_q(1024, 2) == "2^10");
  CHECK(power_of_q(64, 8) == "8^2");
  CHECK(power_of_q(12, 2) == "12");
  const std::vector<Table1Row> rows{table1_row(2, 2), table1_row(2, 3)};
  const std::string text = table1_text(rows);
  CHECK(text.rfind("q  n  C    C~   method", 0) == 0);
  CHECK(text.find("2  3  2^2  2^3  both") != std::string::npos);
  const auto j = nlohmann::json::parse(to_json(rows));
  REQUIRE(j.size() == 2);
  CHECK(j[1]["C"] == 4);
  CHECK(j[1]["C_tilde"] == 8);
  CHECK(j[1]["status"] == "CONJECTURE-CONSISTENT");
  CHECK(j[0]["conjecture_C"].is_null());
  const auto f = nlohmann::json::parse(to_json(formula_report(*ring(2, "t^3"))));
  CHECK(f["level_sizes"][2] == "48");
  CHECK(f["pi_q"] == "3/4");
  CHECK(to_json(rows) == to_json(std::vector<Table1Row>{table1_row(2, 2), table1_row(2, 3)}));
}
