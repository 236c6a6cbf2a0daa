#include "congraph/coset_graph.hpp"

#include <absl/container/flat_hash_map.h>

#include <algorithm>
#include <numeric>
#include <sstream>

#include "congraph/lift.hpp"
#include "json.hpp"

namespace congraph {

std::string_view to_string(BuildMode mode) { return mode == BuildMode::Identity ? "identity" : "full"; }

BuildMode parse_build_mode(std::string_view text) {
  if (text == "identity") return BuildMode::Identity;
  if (text == "full") return BuildMode::Full;
  throw std::invalid_argument("unknown build mode '" + std::string(text) + "'");
}

int LevelledGraph::level_of(uint32_t v) const {
  const auto it = std::upper_bound(level_start.begin(), level_start.end(), v);
  return static_cast<int>(it - level_start.begin()) - 1;
}

std::optional<uint32_t> LevelledGraph::find(int level, uint64_t key) const {
  // Keys are not sorted within a level; graphs small enough to query this
  // way are small enough to scan.
  for (uint32_t v = level_start[static_cast<size_t>(level)]; v < level_start[static_cast<size_t>(level) + 1]; ++v) {
    if (keys[v] == key) return v;
  }
  return std::nullopt;
}

namespace {

class UnionFind {
 public:
  explicit UnionFind(size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0u); }
  uint32_t find(uint32_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(uint32_t a, uint32_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<uint32_t> parent_;
};

using KeyMap = absl::flat_hash_map<uint64_t, uint32_t>;

struct Discovery {
  std::vector<std::vector<uint64_t>> level_keys;  // discovery order
  std::vector<KeyMap> index;                      // key -> position in level
  std::vector<std::pair<uint64_t, uint64_t>> edge_slots;  // (level, pos) pairs packed per endpoint

  explicit Discovery(int levels) : level_keys(static_cast<size_t>(levels)), index(static_cast<size_t>(levels)) {}

  uint64_t total() const {
    uint64_t t = 0;
    for (const auto& l : level_keys) t += l.size();
    return t;
  }
  std::vector<uint64_t> sizes() const {
    std::vector<uint64_t> out;
    for (const auto& l : level_keys) out.push_back(l.size());
    return out;
  }
  // Returns (position, inserted).
  std::pair<uint32_t, bool> insert(int level, uint64_t key) {
    auto& idx = index[static_cast<size_t>(level)];
    auto& keys = level_keys[static_cast<size_t>(level)];
    const auto [it, inserted] = idx.try_emplace(key, static_cast<uint32_t>(keys.size()));
    if (inserted) keys.push_back(key);
    return {it->second, inserted};
  }
};

uint64_t slot(int level, uint32_t pos) { return (uint64_t(level) << 32) | pos; }

void check_budget(const Discovery& d, uint64_t budget) {
  if (d.total() > budget) {
    throw BudgetExceeded("graph exceeds the vertex budget of " + std::to_string(budget), d.sizes());
  }
}

LevelledGraph assemble(GroupPtr group, BuildMode mode, const Discovery& d) {
  std::vector<uint32_t> sizes;
  std::vector<uint64_t> keys;
  for (const auto& l : d.level_keys) {
    sizes.push_back(static_cast<uint32_t>(l.size()));
    keys.insert(keys.end(), l.begin(), l.end());
  }
  std::vector<uint32_t> start(sizes.size() + 1, 0);
  for (size_t i = 0; i < sizes.size(); ++i) start[i + 1] = start[i] + sizes[i];
  std::vector<std::pair<uint32_t, uint32_t>> edges;
  edges.reserve(d.edge_slots.size());
  for (const auto& [a, b] : d.edge_slots) {
    edges.emplace_back(start[a >> 32] + static_cast<uint32_t>(a), start[b >> 32] + static_cast<uint32_t>(b));
  }
  LevelledGraph g = make_graph(std::move(sizes), edges, std::move(keys));
  g.group = std::move(group);
  g.mode = mode;
  return g;
}

// Neighbour keys of the coset h H_from at level `to`.
void neighbour_keys(const MatrixGroup& G, uint64_t key, int from, int to, std::vector<uint64_t>& out) {
  out.clear();
  const Mat2 h = G.unpack(key);
  for (const Mat2& x : G.transversal(from, to)) out.push_back(G.coset_key_packed(G.mul(h, x), to));
}

}  // namespace

LevelledGraph make_graph(std::vector<uint32_t> level_sizes, const std::vector<std::pair<uint32_t, uint32_t>>& edges,
                         std::vector<uint64_t> keys) {
  LevelledGraph g;
  g.level_start.assign(level_sizes.size() + 1, 0);
  for (size_t i = 0; i < level_sizes.size(); ++i) g.level_start[i + 1] = g.level_start[i] + level_sizes[i];
  const uint32_t V = g.level_start.back();
  if (keys.empty()) keys.assign(V, 0);
  if (keys.size() != V) throw std::invalid_argument("key count does not match vertex count");
  g.keys = std::move(keys);
  std::vector<uint32_t> deg(V, 0);
  for (const auto& [a, b] : edges) {
    if (a >= V || b >= V) throw std::invalid_argument("edge endpoint out of range");
    const int la = g.level_of(a), lb = g.level_of(b);
    if (la - lb != 1 && lb - la != 1) {
      throw std::invalid_argument("edge " + std::to_string(a) + "-" + std::to_string(b) + " does not join consecutive levels");
    }
    ++deg[a];
    ++deg[b];
  }
  g.adj_start.assign(V + 1, 0);
  for (uint32_t v = 0; v < V; ++v) g.adj_start[v + 1] = g.adj_start[v] + deg[v];
  g.adj.resize(g.adj_start[V]);
  std::vector<uint32_t> fill(g.adj_start.begin(), g.adj_start.end() - 1);
  for (const auto& [a, b] : edges) {
    g.adj[fill[a]++] = b;
    g.adj[fill[b]++] = a;
  }
  for (uint32_t v = 0; v < V; ++v) {
    auto first = g.adj.begin() + g.adj_start[v], last = g.adj.begin() + g.adj_start[v + 1];
    std::sort(first, last);
    if (std::adjacent_find(first, last) != last) throw std::invalid_argument("repeated edge at vertex " + std::to_string(v));
  }
  label_components(g);
  return g;
}

void label_components(LevelledGraph& g) {
  UnionFind uf(g.size());
  for (uint32_t v = 0; v < g.size(); ++v) {
    for (uint32_t w : g.neighbors(v)) {
      if (w > v) uf.unite(v, w);
    }
  }
  g.component.assign(g.size(), 0);
  absl::flat_hash_map<uint32_t, uint32_t> label;
  for (uint32_t v = 0; v < g.size(); ++v) {
    const auto [it, inserted] = label.try_emplace(uf.find(v), static_cast<uint32_t>(label.size()));
    g.component[v] = it->second;
  }
  g.component_count = static_cast<uint32_t>(label.size());
}

LevelledGraph build_graph(GroupPtr group, const BuildOptions& options) {
  const MatrixGroup& G = *group;
  const int n = G.degree();
  const int top = options.max_level < 0 ? n - 1 : options.max_level;
  if (top > n - 1) throw std::invalid_argument("max level " + std::to_string(top) + " exceeds n-1 = " + std::to_string(n - 1));
  const int levels = top + 1;
  Discovery d(levels);
  std::vector<uint64_t> nbrs;

  if (options.mode == BuildMode::Identity) {
    std::vector<uint64_t> queue;  // slots
    const uint64_t id_key = G.coset_key_packed(G.identity(), 0);
    d.insert(0, id_key);
    queue.push_back(slot(0, 0));
    for (size_t head = 0; head < queue.size(); ++head) {
      const int level = static_cast<int>(queue[head] >> 32);
      const uint32_t pos = static_cast<uint32_t>(queue[head]);
      const uint64_t key = d.level_keys[static_cast<size_t>(level)][pos];
      if (level < top) {
        neighbour_keys(G, key, level, level + 1, nbrs);
        for (uint64_t k : nbrs) {
          const auto [p, inserted] = d.insert(level + 1, k);
          if (inserted) queue.push_back(slot(level + 1, p));
          d.edge_slots.emplace_back(slot(level, pos), slot(level + 1, p));
        }
      }
      if (level > 0) {
        neighbour_keys(G, key, level, level - 1, nbrs);
        for (uint64_t k : nbrs) {
          const auto [p, inserted] = d.insert(level - 1, k);
          if (inserted) queue.push_back(slot(level - 1, p));
        }
      }
      check_budget(d, options.budget);
    }
  } else {
    const std::vector<Mat2> gens = G.full_group_generators();
    for (int level = 0; level < levels; ++level) {
      d.insert(level, G.coset_key_packed(G.identity(), level));
      auto& keys = d.level_keys[static_cast<size_t>(level)];
      for (size_t head = 0; head < keys.size(); ++head) {
        const Mat2 h = G.unpack(keys[head]);
        for (const Mat2& s : gens) {
          d.insert(level, G.coset_key_packed(G.mul(s, h), level));
        }
        check_budget(d, options.budget);
      }
      const uint64_t expect = G.order() / G.subgroup(level).size();
      if (keys.size() != expect) {
        throw std::logic_error("level " + std::to_string(level) + " has " + std::to_string(keys.size()) +
                               " cosets, expected " + std::to_string(expect));
      }
    }
    for (int level = 0; level + 1 < levels; ++level) {
      const auto& keys = d.level_keys[static_cast<size_t>(level)];
      for (uint32_t pos = 0; pos < keys.size(); ++pos) {
        neighbour_keys(G, keys[pos], level, level + 1, nbrs);
        for (uint64_t k : nbrs) {
          const auto it = d.index[static_cast<size_t>(level) + 1].find(k);
          if (it == d.index[static_cast<size_t>(level) + 1].end()) throw std::logic_error("neighbour coset missing from level enumeration");
          d.edge_slots.emplace_back(slot(level, pos), slot(level + 1, it->second));
        }
      }
    }
  }

  LevelledGraph g = assemble(group, options.mode, d);
  if (top == n - 1) g.cusp_count = uint64_t{g.level_size(top)} * G.transversal(n - 1, n).size();
  return g;
}

uint64_t component_count(const LevelledGraph& g) {
  if (g.mode == BuildMode::Full || !g.group) return g.component_count;
  const uint64_t l0 = g.group->order() / g.group->subgroup(0).size();
  const uint64_t found = g.level_size(0);
  if (found == 0 || l0 % found != 0) {
    throw std::logic_error("level-0 size " + std::to_string(l0) + " is not a multiple of the component's " +
                           std::to_string(found));
  }
  return l0 / found;
}

namespace {

LevelledGraph induced(const LevelledGraph& g, const std::vector<bool>& keep) {
  std::vector<uint32_t> remap(g.size(), UINT32_MAX);
  std::vector<uint32_t> sizes;
  std::vector<uint64_t> keys;
  uint32_t next = 0;
  for (int level = 0; level < g.levels(); ++level) {
    uint32_t count = 0;
    for (uint32_t v = g.level_start[static_cast<size_t>(level)]; v < g.level_start[static_cast<size_t>(level) + 1]; ++v) {
      if (!keep[v]) continue;
      remap[v] = next++;
      keys.push_back(g.keys[v]);
      ++count;
    }
    sizes.push_back(count);
  }
  while (!sizes.empty() && sizes.back() == 0) sizes.pop_back();
  std::vector<std::pair<uint32_t, uint32_t>> edges;
  for (uint32_t v = 0; v < g.size(); ++v) {
    if (!keep[v]) continue;
    for (uint32_t w : g.neighbors(v)) {
      if (w > v && keep[w]) edges.emplace_back(remap[v], remap[w]);
    }
  }
  LevelledGraph out = make_graph(std::move(sizes), edges, std::move(keys));
  out.group = g.group;
  out.mode = g.mode;
  return out;
}

}  // namespace

LevelledGraph subgraph_01(const LevelledGraph& g) {
  if (g.levels() < 2) throw std::invalid_argument("the level 0-1 subgraph needs at least two levels");
  std::vector<bool> keep(g.size(), false);
  for (uint32_t v = 0; v < g.level_start[2]; ++v) keep[v] = true;
  return induced(g, keep);
}

LevelledGraph component_subgraph(const LevelledGraph& g, uint32_t label) {
  if (label >= g.component_count) throw std::out_of_range("no component " + std::to_string(label));
  std::vector<bool> keep(g.size());
  for (uint32_t v = 0; v < g.size(); ++v) keep[v] = g.component[v] == label;
  LevelledGraph out = induced(g, keep);
  out.cusp_count = 0;
  return out;
}

std::vector<uint32_t> neighborhood_n0(const LevelledGraph& g, const std::vector<uint32_t>& level1) {
  std::vector<uint32_t> out;
  for (uint32_t v : level1) {
    if (g.levels() < 2 || v < g.level_start[1] || v >= g.level_start[2]) {
      throw std::out_of_range("vertex " + std::to_string(v) + " is not at level 1");
    }
    for (uint32_t w : g.neighbors(v)) {
      if (w < g.level_start[1]) out.push_back(w);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

uint64_t cusp_stabilizer_order(uint32_t q, int n, int i) {
  if (i < n) throw std::invalid_argument("ray positions start at level n");
  uint64_t r = 1;
  for (int j = 0; j <= i - n; ++j) r *= q;
  return r;
}

namespace {

// An element of the coset m H_n (scalars allowed) with determinant 1, if any.
std::optional<Mat2> det_one_member(const MatrixGroup& G, const Mat2& m) {
  const QuotientRing& R = G.ring();
  const Field& F = R.field();
  if (G.variant() == Variant::Sl2) return m;
  const RgElem u = G.det(m);
  // m diag(c, 1) s I has determinant u c s^2; diag(c, 1) lies in every level
  // subgroup of the PGL variants, s I only matters for PglM.
  for (FieldElem c : F.units()) {
    const RgElem uc = R.mul(u, R.from_field(c));
    const Mat2 mc{{R.mul(m.e[0], R.from_field(c)), m.e[1], R.mul(m.e[2], R.from_field(c)), m.e[3]}};
    if (uc == R.one()) return mc;
    if (G.variant() != Variant::PglM) continue;
    const RgElem target = R.inv(uc);
    for (RgElem s : R.units()) {
      if (R.mul(s, s) == target) {
        return Mat2{{R.mul(s, mc.e[0]), R.mul(s, mc.e[1]), R.mul(s, mc.e[2]), R.mul(s, mc.e[3])}};
      }
    }
  }
  return std::nullopt;
}

}  // namespace

std::vector<CuspAnnotation> cusp_annotations(const LevelledGraph& g) {
  if (!g.group) throw std::invalid_argument("cusp annotations need a coset graph");
  const MatrixGroup& G = *g.group;
  const int n = G.degree();
  if (g.levels() != n) throw std::invalid_argument("cusp annotations need levels 0..n-1");
  if (g.mode == BuildMode::Identity && component_count(g) != 1) {
    throw std::logic_error("identity-mode graph covers one of several components; build in full mode");
  }
  std::vector<CuspAnnotation> out;
  const auto& ray = G.transversal(n - 1, n);
  for (uint32_t v = g.level_start[static_cast<size_t>(n) - 1]; v < g.size(); ++v) {
    const Mat2 h = G.unpack(g.keys[v]);
    for (const Mat2& x : ray) {
      CuspAnnotation a;
      a.vertex = v;
      a.representative = G.mul(h, x);
      a.sl2_core_only = G.variant() != Variant::Sl2;
      if (auto m = det_one_member(G, a.representative)) a.witness = sl2_lift(G.ring(), *m);
      out.push_back(std::move(a));
    }
  }
  return out;
}

std::string to_dot(const LevelledGraph& g) {
  static constexpr const char* kPalette[] = {"lightblue", "lightpink", "palegreen", "khaki", "plum", "lightsalmon",
                                             "lightcyan", "wheat"};
  std::ostringstream out;
  out << "graph levelled {\n";
  if (g.group) {
    const MatrixGroup& G = *g.group;
    out << "  // q=" << G.ring().field().order() << " g=" << G.ring().modulus().to_string()
        << " variant=" << to_string(G.variant()) << " mode=" << to_string(g.mode) << "\n";
  }
  out << "  // components=" << g.component_count << " cusps=" << g.cusp_count << "\n";
  if (g.cusp_count > 0) out << "  label=\"cusps: " << g.cusp_count << "\";\n";
  auto name = [&](uint32_t v) {
    const int level = g.level_of(v);
    return "\"" + std::to_string(level) + ":" + std::to_string(v - g.level_start[static_cast<size_t>(level)]) + "\"";
  };
  const bool colour = g.component_count > 1;
  if (colour) out << "  node [style=filled];\n";
  for (int level = 0; level < g.levels(); ++level) {
    out << "  { rank=same;";
    for (uint32_t v = g.level_start[static_cast<size_t>(level)]; v < g.level_start[static_cast<size_t>(level) + 1]; ++v) {
      out << " " << name(v);
      if (colour) out << " [fillcolor=" << kPalette[g.component[v] % std::size(kPalette)] << "]";
      out << ";";
    }
    out << " }\n";
  }
  for (uint32_t v = 0; v < g.size(); ++v) {
    for (uint32_t w : g.neighbors(v)) {
      if (w > v) out << "  " << name(v) << " -- " << name(w) << ";\n";
    }
  }
  out << "}\n";
  return out.str();
}

std::string to_json(const LevelledGraph& g) {
  using json = nlohmann::ordered_json;
  json j;
  if (g.group) {
    const MatrixGroup& G = *g.group;
    const Field& F = G.ring().field();
    j["q"] = F.order();
    j["p"] = F.characteristic();
    j["k"] = F.degree();
    j["g"] = G.ring().modulus().to_string();
    j["variant"] = std::string(to_string(G.variant()));
  }
  j["mode"] = std::string(to_string(g.mode));
  json levels = json::array();
  for (int i = 0; i < g.levels(); ++i) levels.push_back({{"index", i}, {"size", g.level_size(i)}});
  j["levels"] = std::move(levels);
  json vertices = json::array();
  for (uint32_t v = 0; v < g.size(); ++v) {
    json vj = {{"id", v}, {"level", g.level_of(v)}};
    if (g.group) vj["key"] = g.group->key_hex({g.level_of(v), g.keys[v]});
    vertices.push_back(std::move(vj));
  }
  j["vertices"] = std::move(vertices);
  json edges = json::array();
  for (uint32_t v = 0; v < g.size(); ++v) {
    for (uint32_t w : g.neighbors(v)) {
      if (w > v) edges.push_back({v, w});
    }
  }
  j["edges"] = std::move(edges);
  j["components"] = g.component_count;
  j["component_of"] = g.component;
  j["cusp_count"] = g.cusp_count;
  return j.dump() + "\n";
}

LevelledGraph from_json(std::string_view text) {
  using json = nlohmann::json;
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("graph JSON does not parse: ") + e.what());
  }
  try {
    GroupPtr group;
    if (j.contains("q")) {
      auto field = Field::create_order(j.at("q").get<uint32_t>());
      auto ring = QuotientRing::create(field, Poly::parse(field, j.at("g").get<std::string>()));
      group = MatrixGroup::create(parse_variant(j.at("variant").get<std::string>()), ring);
    }
    std::vector<uint32_t> sizes;
    for (const auto& l : j.at("levels")) sizes.push_back(l.at("size").get<uint32_t>());
    std::vector<uint64_t> keys;
    if (group) {
      for (const auto& v : j.at("vertices")) keys.push_back(group->parse_key_hex(v.at("key").get<std::string>()));
    }
    std::vector<std::pair<uint32_t, uint32_t>> edges;
    for (const auto& e : j.at("edges")) edges.emplace_back(e.at(0).get<uint32_t>(), e.at(1).get<uint32_t>());
    LevelledGraph g = make_graph(std::move(sizes), edges, std::move(keys));
    g.group = std::move(group);
    g.mode = parse_build_mode(j.at("mode").get<std::string>());
    g.cusp_count = j.at("cusp_count").get<uint64_t>();
    if (g.component_count != j.at("components").get<uint32_t>()) {
      throw std::invalid_argument("component count in JSON disagrees with the edges");
    }
    return g;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed graph JSON: ") + e.what());
  }
}

}  // namespace congraph
