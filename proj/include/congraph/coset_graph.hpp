#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "congraph/matrix_group.hpp"
#include "congraph/snf.hpp"

namespace congraph {

enum class BuildMode { Identity, Full };

std::string_view to_string(BuildMode mode);
/// Accepts "identity" and "full". Throws std::invalid_argument.
BuildMode parse_build_mode(std::string_view text);

struct BuildOptions {
  BuildMode mode = BuildMode::Full;
  /// Highest level built; -1 means n-1. A value of 1 gives D(0-1) directly.
  int max_level = -1;
  /// Maximum number of vertices.
  uint64_t budget = uint64_t{1} << 22;
};

/// Thrown when a construction or search exceeds its budget. Carries what was
/// found before stopping.
class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(const std::string& what, std::vector<uint64_t> partial_level_sizes = {})
      : std::runtime_error(what), partial_level_sizes(std::move(partial_level_sizes)) {}

  std::vector<uint64_t> partial_level_sizes;
};

/// Finite core of a levelled coset graph. Vertex ids are level-major and in
/// discovery order within a level; edges join consecutive levels only.
///
/// `group` is null for graphs that do not come from a coset construction
/// (hand-built test graphs).
struct LevelledGraph {
  GroupPtr group;
  BuildMode mode = BuildMode::Full;
  std::vector<uint32_t> level_start;  // size levels() + 1
  std::vector<uint64_t> keys;         // packed coset key per vertex
  std::vector<uint32_t> adj_start;    // CSR, size size() + 1
  std::vector<uint32_t> adj;          // sorted within each vertex
  std::vector<uint32_t> component;    // labels in order of least vertex
  uint32_t component_count = 0;
  /// Rays leaving the last core level; 0 when the top level built is not n-1.
  uint64_t cusp_count = 0;

  uint32_t size() const { return static_cast<uint32_t>(keys.size()); }
  int levels() const { return static_cast<int>(level_start.size()) - 1; }
  uint32_t level_size(int i) const { return level_start[static_cast<size_t>(i) + 1] - level_start[static_cast<size_t>(i)]; }
  int level_of(uint32_t v) const;
  std::span<const uint32_t> neighbors(uint32_t v) const {
    return {adj.data() + adj_start[v], adj.data() + adj_start[v + 1]};
  }
  uint32_t degree(uint32_t v) const { return adj_start[v + 1] - adj_start[v]; }
  uint64_t edge_count() const { return adj.size() / 2; }
  /// Vertex id at level `level` with this packed key, if present.
  std::optional<uint32_t> find(int level, uint64_t key) const;
};

/// Builds X_g, X-bar_g or X-tilde_g (by the group's variant) on levels
/// 0..max_level. Identity mode runs a BFS from the identity coset at level 0
/// and yields its connected component. Full mode enumerates every level as
/// the orbit of the identity coset under the full group, then adds all edges.
/// Throws BudgetExceeded.
LevelledGraph build_graph(GroupPtr group, const BuildOptions& options = {});

/// Assembles a graph from explicit per-level vertex counts and edges (ids
/// level-major). Used for imports and hand-built graphs; labels components.
/// Throws std::invalid_argument on edges that skip levels.
LevelledGraph make_graph(std::vector<uint32_t> level_sizes, const std::vector<std::pair<uint32_t, uint32_t>>& edges,
                         std::vector<uint64_t> keys = {});

/// Union-find labelling; fills component and component_count.
void label_components(LevelledGraph& graph);

/// Number of components over the whole group: directly in full mode; in
/// identity mode |L_0| / (level-0 vertices found), using that the group
/// permutes components transitively. Throws std::logic_error when the
/// quotient is not exact.
uint64_t component_count(const LevelledGraph& graph);

/// Induced subgraph on levels 0 and 1. Throws std::invalid_argument when the
/// graph has fewer than two levels.
LevelledGraph subgraph_01(const LevelledGraph& graph);

/// Induced subgraph on one component, ids renumbered in order.
LevelledGraph component_subgraph(const LevelledGraph& graph, uint32_t label);

/// Level-0 vertices adjacent to some vertex of S (level-1 ids), sorted.
/// Throws std::out_of_range for ids that are not level-1 vertices.
std::vector<uint32_t> neighborhood_n0(const LevelledGraph& graph, const std::vector<uint32_t>& level1);

/// A cusp: one ray leaving level n-1.
struct CuspAnnotation {
  uint32_t vertex = 0;  // level n-1 vertex the ray is attached to
  Mat2 representative;  // element of the ray coset h x H_n
  /// A matrix of SL2(F_q[t]) reducing into the ray coset (after scaling for
  /// the PGL variants); absent when the coset holds no determinant-1 matrix.
  std::optional<PolyMat2> witness;
  /// True for the PGL variants, where the witness describes the SL2 core.
  bool sl2_core_only = false;
};

/// One annotation per cusp, in vertex order. Throws std::logic_error for
/// identity-mode graphs that do not cover the group, and std::invalid_argument
/// for graphs without a group or not built up to level n-1.
std::vector<CuspAnnotation> cusp_annotations(const LevelledGraph& graph);

/// |U_i| = q^{i-n+1}: the cusp stabilizer {(1, g f; 0, 1) : deg f <= i - n}
/// at ray position i >= n.
uint64_t cusp_stabilizer_order(uint32_t q, int n, int i);

/// Graphviz text: one rank per level, vertices labelled level:index, filled
/// by component when there is more than one.
std::string to_dot(const LevelledGraph& graph);

/// JSON with fields q, p, k, g, variant, mode, levels, vertices (id, level,
/// key hex), edges, components, component_of, cusp_count. Deterministic.
std::string to_json(const LevelledGraph& graph);

/// Inverse of to_json; rebuilds the group from q and g. Throws
/// std::invalid_argument on malformed input.
LevelledGraph from_json(std::string_view text);

}  // namespace congraph
