#ifndef GCONN_SPANNING_PACK_HPP
#define GCONN_SPANNING_PACK_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "gconn/graph.hpp"

namespace gconn {

/// A partition of V(G) into nonempty blocks, with the crossing-edge count
/// (edges between distinct blocks) cached.
struct Partition {
  std::vector<std::uint32_t> blocks;  // disjoint, cover V, ordered by smallest member
  int crossing = 0;

  int block_count() const { return static_cast<int>(blocks.size()); }

  static Partition of_blocks(const Graph& g, std::vector<std::uint32_t> blocks);
  static Partition singletons(const Graph& g);
};

/// Outcome of a packing request: either l edge-disjoint spanning trees, or a
/// partition P with fewer than l(|P|-1) crossing edges. Exactly one side is
/// populated; the packing theorem guarantees one always exists.
struct PackCertificate {
  int requested = 0;
  std::vector<std::vector<Edge>> trees;  // l spanning trees when packable
  std::optional<Partition> witness;      // violating partition otherwise

  bool has_trees() const { return !witness.has_value(); }
};

/// Packs l edge-disjoint spanning trees by incremental forest augmentation
/// (matroid-union exchange searches), or derives a violating partition from
/// the final blocked state. Deterministic for a given input.
PackCertificate pack_spanning(const Graph& g, int l);

/// Exhaustive sweep over all set partitions of V (restricted-growth strings
/// in lexicographic order). Returns the violating partition with the fewest
/// blocks, breaking ties by smaller crossing count and then by enumeration
/// order, or nullopt when no partition violates. Requires n <= 12.
/// threads <= 1 runs the serial reference sweep.
std::optional<Partition> violating_partition(const Graph& g, int l, int threads = 1);

/// Largest l for which l edge-disjoint spanning trees exist; 0 for a
/// disconnected graph (and, degenerately, for the 1-vertex graph).
int spanning_tree_packing_number(const Graph& g);

}  // namespace gconn

#endif
