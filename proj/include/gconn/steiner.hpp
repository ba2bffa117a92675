#ifndef GCONN_STEINER_HPP
#define GCONN_STEINER_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "gconn/graph.hpp"

namespace gconn {

enum class DisjointMode {
  kEdge,      // trees may share vertices, never edges
  kInternal,  // trees share no edges and no vertices outside S
};

// Lemma-6 tree classes: a tree either stays inside G[S] (then it has exactly
// k-1 edges) or touches the complement (then it spends at least k edges of
// E(G[S]) plus the crossing set).
enum class TreeClass { kInside, kCrossing };

struct SteinerTree {
  std::vector<Edge> edges;  // sorted
  std::uint32_t vertex_mask = 0;

  static SteinerTree of_edges(std::vector<Edge> edges);
};

struct TreeFamily {
  DisjointMode mode = DisjointMode::kEdge;
  std::vector<SteinerTree> trees;
  std::vector<TreeClass> classes;  // parallel to trees

  int size() const { return static_cast<int>(trees.size()); }
};

struct LocalResult {
  int count = 0;
  TreeFamily family;  // witness of exactly `count` trees
};

/// Exact generalized local edge-connectivity: the maximum number of
/// edge-disjoint S-trees, with a maximum family as witness. Returns 0 with an
/// empty family on a disconnected graph. Requires 2 <= |S|, n <= 12.
LocalResult lambda_local(const Graph& g, const TerminalSet& s);

/// Exact generalized local connectivity: maximum internally disjoint S-trees.
LocalResult kappa_local(const Graph& g, const TerminalSet& s);

/// Shared implementation behind the two wrappers.
LocalResult steiner_pack(const Graph& g, const TerminalSet& s, DisjointMode mode);

struct GlobalResult {
  int value = 0;
  std::optional<TerminalSet> witness;  // a minimizing S (absent for the 0/1 conventions)
  TreeFamily family;                   // witness family for that S
};

/// kappa_k / lambda_k: minimum of the local value over all k-subsets of V.
/// Conventions: 0 when g is disconnected, 1 when g is connected with fewer
/// than k vertices. The subset sweep fans out over `threads` workers in
/// fixed-size blocks, so results are byte-identical for every thread count.
GlobalResult generalized_connectivity(const Graph& g, int k, DisjointMode mode,
                                      int threads = 1);

/// Independent two-terminal oracle via unit-capacity max-flow (vertex-split
/// network for the internal mode). Agrees with the packing solvers on
/// S = {u, v} by Menger's theorem.
int menger_check(const Graph& g, int u, int v, DisjointMode mode);

}  // namespace gconn

#endif
