#pragma once

#include <cstdint>
#include <vector>

#include "congraph/coset_graph.hpp"

namespace congraph {

struct IsoOptions {
  /// Maximum combined vertex count of the two graphs.
  uint64_t vertex_budget = uint64_t{1} << 16;
  /// Maximum number of individualization steps.
  uint64_t node_budget = 100000;
};

struct IsoResult {
  bool isomorphic = false;
  /// mapping[v] is the image in the second graph of vertex v of the first;
  /// empty unless isomorphic.
  std::vector<uint32_t> mapping;
  uint64_t search_nodes = 0;
};

/// Level-respecting isomorphism test. Colour refinement runs on the disjoint
/// union (initial colour = level) so colour names are shared; unequal colour
/// class sizes prove non-isomorphism. Otherwise a vertex of the first graph
/// is individualized against each candidate of the second and the search
/// recurses. Any mapping returned has been checked edge by edge.
/// Throws BudgetExceeded.
IsoResult iso_check(const LevelledGraph& a, const LevelledGraph& b, const IsoOptions& options = {});

/// True iff mapping is a level-preserving bijection carrying the edges of a
/// exactly onto the edges of b.
bool verify_isomorphism(const LevelledGraph& a, const LevelledGraph& b, const std::vector<uint32_t>& mapping);

}  // namespace congraph
