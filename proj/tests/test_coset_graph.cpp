#include <algorithm>
#include <set>
#include <string>

#include "congraph/coset_graph.hpp"
#include "congraph/lift.hpp"
#include "doctest.h"

using namespace congraph;

namespace {

GroupPtr make_group(Variant v, uint32_t q, const char* g) {
  auto f = Field::create_order(q);
  return MatrixGroup::create(v, QuotientRing::create(f, Poly::parse(f, g)));
}

LevelledGraph build(Variant v, uint32_t q, const char* g, BuildMode mode = BuildMode::Full, int max_level = -1) {
  return build_graph(make_group(v, q, g), {mode, max_level});
}

std::vector<uint32_t> level_sizes(const LevelledGraph& g) {
  std::vector<uint32_t> out;
  for (int i = 0; i < g.levels(); ++i) out.push_back(g.level_size(i));
  return out;
}

size_t count(const std::string& text, const std::string& needle) {
  size_t n = 0;
  for (size_t pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
  return n;
}

uint32_t up_degree(const LevelledGraph& g, uint32_t v) {
  const int level = g.level_of(v);
  uint32_t d = 0;
  for (uint32_t w : g.neighbors(v)) d += g.level_of(w) == level + 1 ? 1 : 0;
  return d;
}

constexpr Variant kVariants[] = {Variant::Sl2, Variant::PglBar, Variant::PglM};

}  // namespace

TEST_CASE("build modes parse") {
  CHECK(parse_build_mode("full") == BuildMode::Full);
  CHECK(parse_build_mode("identity") == BuildMode::Identity);
  CHECK_THROWS_AS(parse_build_mode("half"), std::invalid_argument);
}

TEST_CASE("small graph examples") {
  const LevelledGraph g1 = build(Variant::Sl2, 2, "t");
  CHECK(level_sizes(g1) == std::vector<uint32_t>{1});
  CHECK(g1.cusp_count == 3);
  CHECK(g1.edge_count() == 0);

  const LevelledGraph g2 = build(Variant::Sl2, 2, "t^2");
  CHECK(level_sizes(g2) == std::vector<uint32_t>{8, 12});
  CHECK(g2.component_count == 1);
  CHECK(g2.cusp_count == 12);
  for (uint32_t v = 0; v < g2.size(); ++v) CHECK(g2.degree(v) == (g2.level_of(v) == 0 ? 3u : 2u));

  const LevelledGraph g3 = build(Variant::Sl2, 2, "t^3");
  CHECK(level_sizes(g3) == std::vector<uint32_t>{64, 96, 48});
  CHECK(g3.component_count == 1);

  CHECK(level_sizes(build(Variant::Sl2, 3, "t^2")) == std::vector<uint32_t>{27, 36});
}

TEST_CASE("level sizes, bipartite structure and degree profile on the grid") {
  for (uint32_t q : {2u, 3u, 4u}) {
    for (const char* gt : {"t", "t^2", "t^3", "t^2+t", "t^2+t+1"}) {
      for (Variant v : kVariants) {
        CAPTURE(q);
        CAPTURE(gt);
        CAPTURE(to_string(v));
        auto G = make_group(v, q, gt);
        const LevelledGraph g = build_graph(G);
        const int n = G->degree();
        REQUIRE(g.levels() == n);
        for (int i = 0; i < n; ++i) CHECK(g.level_size(i) == G->order() / G->subgroup(i).size());
        CHECK(g.cusp_count == G->order() / G->ray_subgroup().size());
        if (n >= 2) CHECK(g.cusp_count == g.level_size(n - 1));
        bool ok = true;
        for (uint32_t x = 0; x < g.size(); ++x) {
          const int level = g.level_of(x);
          uint32_t up = 0, down = 0;
          for (uint32_t y : g.neighbors(x)) {
            const int ly = g.level_of(y);
            ok &= ly == level + 1 || ly == level - 1;
            (ly > level ? up : down) += 1;
          }
          if (n == 1) {
            ok &= up == 0 && down == 0;
          } else if (level == 0) {
            ok &= up == q + 1 && down == 0;
          } else if (level < n - 1) {
            ok &= up == 1 && down == q;
          } else {
            ok &= up == 0 && down == q;
          }
        }
        CHECK(ok);
      }
    }
  }
}

TEST_CASE("cusp counts for g = t^n") {
  for (uint32_t q : {2u, 3u}) {
    uint64_t expect = q + 1;
    for (const char* gt : {"t", "t^2", "t^3"}) {
      CHECK(build(Variant::Sl2, q, gt).cusp_count == expect);
      expect *= q * q;
    }
  }
}

TEST_CASE("component counts") {
  for (uint32_t q : {2u, 3u, 4u}) {
    for (const char* gt : {"t", "t^2", "t^3", "t^2+t", "t^2+t+1"}) {
      CAPTURE(q);
      CAPTURE(gt);
      CHECK(build(Variant::Sl2, q, gt).component_count == 1);
      CHECK(build(Variant::PglBar, q, gt).component_count == 1);
      auto G = make_group(Variant::PglM, q, gt);
      CHECK(build_graph(G).component_count == square_class_index(G->ring()).value);
    }
  }
  CHECK(build(Variant::PglM, 2, "t^2").component_count == 2);
  CHECK(build(Variant::PglM, 3, "t^2").component_count == 1);
  CHECK(build(Variant::PglM, 2, "t^2+t").component_count == 1);
}

TEST_CASE("identity mode builds the identity component") {
  for (Variant v : kVariants) {
    for (auto [q, gt] : {std::pair{2u, "t^3"}, std::pair{3u, "t^2"}, std::pair{4u, "t^2"}, std::pair{2u, "t^3+t^2"}}) {
      CAPTURE(q);
      CAPTURE(gt);
      auto G = make_group(v, q, gt);
      const LevelledGraph full = build_graph(G);
      const LevelledGraph id = build_graph(G, {BuildMode::Identity});
      CHECK(component_count(id) == full.component_count);
      CHECK(id.component_count == 1);
      const uint32_t c = full.component[*full.find(0, id.keys[0])];
      std::set<std::pair<int, uint64_t>> from_full, from_id;
      for (uint32_t x = 0; x < full.size(); ++x) {
        if (full.component[x] == c) from_full.insert({full.level_of(x), full.keys[x]});
      }
      for (uint32_t x = 0; x < id.size(); ++x) from_id.insert({id.level_of(x), id.keys[x]});
      CHECK(from_full == from_id);
      CHECK(id.edge_count() * full.component_count == full.edge_count());
    }
  }
}

TEST_CASE("down neighbours agree with the adjacency") {
  for (Variant v : kVariants) {
    auto G = make_group(v, 3, "t^3");
    const LevelledGraph g = build_graph(G);
    bool ok = true;
    for (uint32_t x = g.level_start[1]; x < g.size(); ++x) {
      const int level = g.level_of(x);
      std::set<uint64_t> expect;
      for (const Mat2& t : G->transversal(level, level - 1)) {
        expect.insert(G->coset_key_packed(G->mul(G->unpack(g.keys[x]), t), level - 1));
      }
      std::set<uint64_t> got;
      for (uint32_t y : g.neighbors(x)) {
        if (g.level_of(y) == level - 1) got.insert(g.keys[y]);
      }
      ok &= got == expect;
    }
    CHECK(ok);
  }
}

TEST_CASE("level 0-1 subgraph components against closure") {
  auto closure_index = [](const MatrixGroup& G) {
    std::vector<Mat2> gens = G.subgroup(0);
    gens.insert(gens.end(), G.subgroup(1).begin(), G.subgroup(1).end());
    const Closure c = group_closure(G, gens);
    REQUIRE(c.complete);
    REQUIRE(G.order() % c.size() == 0);
    return G.order() / c.size();
  };
  for (Variant v : kVariants) {
    for (auto [q, gt] : {std::pair{2u, "t^2"}, std::pair{2u, "t^3"}, std::pair{2u, "t^4"}, std::pair{3u, "t^2"},
                         std::pair{3u, "t^3"}, std::pair{4u, "t^2"}, std::pair{2u, "t^3+t^2"}, std::pair{4u, "t^3"}}) {
      CAPTURE(q);
      CAPTURE(gt);
      CAPTURE(to_string(v));
      auto G = make_group(v, q, gt);
      const uint64_t index = closure_index(*G);
      const LevelledGraph d = subgraph_01(build_graph(G));
      CHECK(d.component_count == index);
      const LevelledGraph id = build_graph(G, {BuildMode::Identity, 1});
      CHECK(component_count(id) == index);
    }
  }
  CHECK(subgraph_01(build(Variant::Sl2, 2, "t^3")).component_count == 4);
  CHECK(subgraph_01(build(Variant::PglM, 2, "t^3")).component_count == 8);
  CHECK(subgraph_01(build(Variant::PglM, 4, "t^2")).component_count == 4);
  CHECK_THROWS_AS(subgraph_01(build(Variant::Sl2, 2, "t")), std::invalid_argument);
}

TEST_CASE("N0 neighbourhoods") {
  const LevelledGraph d = subgraph_01(build(Variant::PglM, 4, "t^2"));
  CHECK(neighborhood_n0(d, {}).empty());
  std::vector<uint32_t> all1;
  for (uint32_t v = d.level_start[1]; v < d.level_start[2]; ++v) all1.push_back(v);
  CHECK(neighborhood_n0(d, all1).size() == d.level_size(0));

  std::vector<uint32_t> s;
  for (uint32_t v : all1) {
    if (d.component[v] == 0) s.push_back(v);
  }
  const auto n0 = neighborhood_n0(d, s);
  uint32_t comp0_level0 = 0;
  for (uint32_t v = 0; v < d.level_start[1]; ++v) comp0_level0 += d.component[v] == 0 ? 1 : 0;
  CHECK(n0.size() == comp0_level0);
  CHECK(n0.size() * 5 == s.size() * 4);
  CHECK_THROWS_AS(neighborhood_n0(d, {0}), std::out_of_range);
  CHECK_THROWS_AS(neighborhood_n0(d, {d.size()}), std::out_of_range);
}

TEST_CASE("cusp annotations") {
  CHECK(cusp_annotations(build(Variant::Sl2, 2, "t")).size() == 3);
  CHECK(cusp_annotations(build(Variant::Sl2, 2, "t^2")).size() == 12);
  for (Variant v : kVariants) {
    for (auto [q, gt] : {std::pair{2u, "t"}, std::pair{2u, "t^2"}, std::pair{3u, "t^2"}, std::pair{2u, "t^3"}}) {
      CAPTURE(q);
      CAPTURE(gt);
      CAPTURE(to_string(v));
      auto G = make_group(v, q, gt);
      const LevelledGraph g = build_graph(G);
      const auto cusps = cusp_annotations(g);
      CHECK(cusps.size() == g.cusp_count);
      const int n = G->degree();
      const Poly one = Poly::constant(G->ring().field_ptr(), FieldElem{1});
      std::set<uint64_t> rays;
      bool ok = true;
      for (const CuspAnnotation& c : cusps) {
        ok &= g.level_of(c.vertex) == n - 1;
        ok &= c.sl2_core_only == (v != Variant::Sl2);
        const uint64_t ray_key = G->coset_key_packed(c.representative, n);
        rays.insert(ray_key);
        // The ray coset sits inside the vertex's coset.
        ok &= G->coset_key_packed(c.representative, n - 1) == g.keys[c.vertex];
        if (v != Variant::PglM) ok &= c.witness.has_value();
        if (c.witness) {
          ok &= c.witness->det() == one;
          const Mat2 r = G->canonical_scale(reduce(G->ring(), *c.witness));
          ok &= G->coset_key_packed(r, n) == ray_key;
        }
      }
      CHECK(ok);
      CHECK(rays.size() == cusps.size());
    }
  }
  // PGL-M with two components: only the identity component's rays contain
  // determinant-1 matrices.
  const auto m = cusp_annotations(build(Variant::PglM, 2, "t^2"));
  const auto with = std::count_if(m.begin(), m.end(), [](const CuspAnnotation& c) { return c.witness.has_value(); });
  CHECK(static_cast<size_t>(with) * 2 == m.size());

  CHECK(cusp_stabilizer_order(2, 3, 3) == 2);
  CHECK(cusp_stabilizer_order(2, 3, 5) == 8);
  CHECK(cusp_stabilizer_order(3, 1, 2) == 9);
  CHECK_THROWS_AS(cusp_stabilizer_order(2, 3, 2), std::invalid_argument);

  const LevelledGraph partial = build(Variant::PglM, 2, "t^2", BuildMode::Identity);
  CHECK_THROWS_AS(cusp_annotations(partial), std::logic_error);
}

TEST_CASE("budget") {
  auto G = make_group(Variant::Sl2, 2, "t^3");
  try {
    build_graph(G, {BuildMode::Full, -1, 100});
    FAIL("expected BudgetExceeded");
  } catch (const BudgetExceeded& e) {
    CHECK_FALSE(e.partial_level_sizes.empty());
  }
  CHECK_THROWS_AS(build_graph(G, {BuildMode::Identity, -1, 100}), BudgetExceeded);
  CHECK_THROWS_AS(build_graph(G, {BuildMode::Full, 3}), std::invalid_argument);
}

TEST_CASE("DOT export") {
  const std::string dot = to_dot(build(Variant::Sl2, 2, "t^2"));
  CHECK(count(dot, " -- ") == 24);
  CHECK(count(dot, "\"0:") == 8 + 24);
  CHECK(count(dot, "\"1:") == 12 + 24);
  CHECK(count(dot, "rank=same") == 2);

  const std::string one = to_dot(build(Variant::Sl2, 2, "t"));
  CHECK(count(one, " -- ") == 0);
  CHECK(count(one, "\"0:0\"") == 1);
  CHECK(count(one, "cusps: 3") == 1);

  const std::string two = to_dot(build(Variant::PglM, 2, "t^2"));
  CHECK(count(two, "fillcolor=lightblue") > 0);
  CHECK(count(two, "fillcolor=lightpink") > 0);
}

TEST_CASE("JSON round trip") {
  for (Variant v : kVariants) {
    for (auto [q, gt] : {std::pair{2u, "t^2"}, std::pair{3u, "t^2"}, std::pair{4u, "t^2+t+1"}, std::pair{2u, "t"}}) {
      const LevelledGraph g = build(v, q, gt);
      const std::string text = to_json(g);
      const LevelledGraph back = from_json(text);
      CHECK(back.level_start == g.level_start);
      CHECK(back.keys == g.keys);
      CHECK(back.adj_start == g.adj_start);
      CHECK(back.adj == g.adj);
      CHECK(back.component == g.component);
      CHECK(back.cusp_count == g.cusp_count);
      CHECK(back.mode == g.mode);
      CHECK(to_json(back) == text);
      CHECK(to_json(build(v, q, gt)) == text);
    }
  }
  CHECK_THROWS_AS(from_json("{"), std::invalid_argument);
  CHECK_THROWS_AS(from_json("{\"levels\": 3}"), std::invalid_argument);
}

TEST_CASE("hand-built graphs") {
  const LevelledGraph g = make_graph({2, 2}, {{0, 2}, {1, 3}});
  CHECK(g.component_count == 2);
  CHECK(g.component == std::vector<uint32_t>{0, 1, 0, 1});
  CHECK_THROWS_AS(make_graph({1, 1, 1}, {{0, 2}}), std::invalid_argument);
  CHECK_THROWS_AS(make_graph({1, 1}, {{0, 1}, {1, 0}}), std::invalid_argument);
  const LevelledGraph c = component_subgraph(g, 1);
  CHECK(c.size() == 2);
  CHECK(c.edge_count() == 1);
  CHECK(up_degree(c, 0) == 1);
}
