#include "congraph/iso.hpp"

#include <algorithm>
#include <numeric>

namespace congraph {

bool verify_isomorphism(const LevelledGraph& a, const LevelledGraph& b, const std::vector<uint32_t>& mapping) {
  if (a.size() != b.size() || a.levels() != b.levels() || mapping.size() != a.size()) return false;
  if (a.edge_count() != b.edge_count()) return false;
  std::vector<bool> used(b.size(), false);
  for (uint32_t v = 0; v < a.size(); ++v) {
    const uint32_t w = mapping[v];
    if (w >= b.size() || used[w] || a.level_of(v) != b.level_of(w)) return false;
    used[w] = true;
  }
  for (uint32_t v = 0; v < a.size(); ++v) {
    if (a.degree(v) != b.degree(mapping[v])) return false;
    const auto nb = b.neighbors(mapping[v]);
    for (uint32_t w : a.neighbors(v)) {
      if (!std::binary_search(nb.begin(), nb.end(), mapping[w])) return false;
    }
  }
  return true;
}

namespace {

// Both graphs as one: vertices of b are offset by |a|.
class Union {
 public:
  Union(const LevelledGraph& a, const LevelledGraph& b) : a_(a), b_(b), offset_(a.size()) {}

  uint32_t size() const { return a_.size() + b_.size(); }
  bool in_a(uint32_t v) const { return v < offset_; }
  uint32_t offset() const { return offset_; }
  template <typename F>
  void for_neighbors(uint32_t v, F&& f) const {
    if (v < offset_) {
      for (uint32_t w : a_.neighbors(v)) f(w);
    } else {
      for (uint32_t w : b_.neighbors(v - offset_)) f(w + offset_);
    }
  }

 private:
  const LevelledGraph& a_;
  const LevelledGraph& b_;
  uint32_t offset_;
};

class Search {
 public:
  Search(const LevelledGraph& a, const LevelledGraph& b, const IsoOptions& options)
      : a_(a), b_(b), u_(a, b), options_(options) {}

  IsoResult run() {
    IsoResult result;
    if (a_.size() != b_.size() || a_.levels() != b_.levels() || a_.edge_count() != b_.edge_count()) return result;
    std::vector<uint32_t> colour(u_.size());
    for (uint32_t v = 0; v < a_.size(); ++v) colour[v] = static_cast<uint32_t>(a_.level_of(v));
    for (uint32_t v = 0; v < b_.size(); ++v) colour[v + u_.offset()] = static_cast<uint32_t>(b_.level_of(v));
    refine(colour);
    if (balanced(colour) && descend(colour)) {
      result.isomorphic = true;
      result.mapping = std::move(mapping_);
    }
    result.search_nodes = nodes_;
    return result;
  }

 private:
  // Iterated refinement by (colour, sorted neighbour colours). New colour
  // names are ranks of signatures, so they do not depend on vertex ids.
  void refine(std::vector<uint32_t>& colour) const {
    const uint32_t N = u_.size();
    std::vector<std::vector<uint32_t>> sig(N);
    std::vector<uint32_t> order(N);
    uint32_t classes = count_classes(colour);
    while (true) {
      for (uint32_t v = 0; v < N; ++v) {
        auto& s = sig[v];
        s.clear();
        s.push_back(colour[v]);
        u_.for_neighbors(v, [&](uint32_t w) { s.push_back(colour[w]); });
        std::sort(s.begin() + 1, s.end());
      }
      std::iota(order.begin(), order.end(), 0u);
      std::sort(order.begin(), order.end(), [&](uint32_t x, uint32_t y) { return sig[x] < sig[y]; });
      uint32_t next = 0;
      for (uint32_t i = 0; i < N; ++i) {
        if (i > 0 && sig[order[i]] != sig[order[i - 1]]) ++next;
        colour[order[i]] = next;
      }
      const uint32_t now = N == 0 ? 0 : next + 1;
      if (now == classes) return;
      classes = now;
    }
  }

  static uint32_t count_classes(const std::vector<uint32_t>& colour) {
    std::vector<uint32_t> c(colour);
    std::sort(c.begin(), c.end());
    return static_cast<uint32_t>(std::unique(c.begin(), c.end()) - c.begin());
  }

  bool balanced(const std::vector<uint32_t>& colour) const {
    std::vector<int64_t> diff(u_.size() + 1, 0);
    for (uint32_t v = 0; v < u_.size(); ++v) diff[colour[v]] += u_.in_a(v) ? 1 : -1;
    return std::all_of(diff.begin(), diff.end(), [](int64_t d) { return d == 0; });
  }

  bool descend(const std::vector<uint32_t>& colour) {
    if (++nodes_ > options_.node_budget) {
      throw BudgetExceeded("isomorphism search exceeded " + std::to_string(options_.node_budget) + " nodes");
    }
    const uint32_t N = u_.size();
    // Smallest non-singleton cell, ties to the lowest colour.
    std::vector<uint32_t> cell_size(N + 1, 0);
    for (uint32_t v = 0; v < N; ++v) ++cell_size[colour[v]];
    uint32_t target = UINT32_MAX, best = UINT32_MAX;
    for (uint32_t c = 0; c <= N; ++c) {
      if (cell_size[c] > 2 && cell_size[c] < best) {
        best = cell_size[c];
        target = c;
      }
    }
    if (target == UINT32_MAX) return leaf(colour);
    uint32_t v = UINT32_MAX;
    std::vector<uint32_t> candidates;
    for (uint32_t x = 0; x < N; ++x) {
      if (colour[x] != target) continue;
      if (u_.in_a(x)) {
        if (v == UINT32_MAX) v = x;
      } else {
        candidates.push_back(x);
      }
    }
    for (uint32_t w : candidates) {
      std::vector<uint32_t> next(colour);
      next[v] = next[w] = N;  // a fresh colour
      refine(next);
      if (balanced(next) && descend(next)) return true;
    }
    return false;
  }

  // Every cell has one vertex of each graph.
  bool leaf(const std::vector<uint32_t>& colour) {
    const uint32_t N = u_.size();
    std::vector<uint32_t> in_b(N + 1, UINT32_MAX);
    for (uint32_t x = u_.offset(); x < N; ++x) in_b[colour[x]] = x - u_.offset();
    std::vector<uint32_t> map(a_.size());
    for (uint32_t v = 0; v < a_.size(); ++v) map[v] = in_b[colour[v]];
    if (!verify_isomorphism(a_, b_, map)) return false;
    mapping_ = std::move(map);
    return true;
  }

  const LevelledGraph& a_;
  const LevelledGraph& b_;
  Union u_;
  IsoOptions options_;
  uint64_t nodes_ = 0;
  std::vector<uint32_t> mapping_;
};

}  // namespace

IsoResult iso_check(const LevelledGraph& a, const LevelledGraph& b, const IsoOptions& options) {
  if (uint64_t{a.size()} + b.size() > options.vertex_budget) {
    throw BudgetExceeded("graphs exceed the isomorphism vertex budget of " + std::to_string(options.vertex_budget));
  }
  return Search(a, b, options).run();
}

}  // namespace congraph
