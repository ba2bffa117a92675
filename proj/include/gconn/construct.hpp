#ifndef GCONN_CONSTRUCT_HPP
#define GCONN_CONSTRUCT_HPP

#include <string>
#include <vector>

#include "gconn/graph.hpp"
#include "gconn/steiner.hpp"

namespace gconn {

/// (n-2)/2 edge-disjoint spanning trees of K_n \ M for even n >= 4,
/// 1 <= |M| <= n-1, 1 <= Delta(K_n[M]) <= n/2. Existence is guaranteed;
/// a packer failure raises InternalContradictionError.
TreeFamily construct_lemma9(int n, const DeletionSet& m);

/// n - k/2 - 1 internally disjoint S-trees of K_n \ M when M is a matching
/// of exactly k-1 edges (k even, 4 <= k <= n). Dispatches on how M meets S:
/// path-patched inside packings plus one rooted tree per saturated terminal
/// and plain stars from the untouched outside vertices.
TreeFamily construct_lemma10_kappa(int n, int k, const DeletionSet& m, const TerminalSet& s);

/// n - k/2 - 1 edge-disjoint S-trees when M is a maximum matching
/// (|M| = floor(n/2), k even). For odd n the unmatched vertex joins the
/// outside stars, or terminates the patch path when it lies in S.
TreeFamily construct_lemma10_lambda(int n, int k, const DeletionSet& m, const TerminalSet& s);

/// One stage of the greedy crossing-edge selection: terminal splits, the
/// chosen (u', u'') pairs in order, all against the residual graph at entry.
struct GreedyStage {
  int root = -1;             // outside vertex w_i
  int demand = 0;            // x_i = |E_{K_n[M]}[w_i, S]|
  std::vector<int> blocked;  // S_1^i: terminals non-adjacent to the root
  std::vector<int> open;     // S_2^i
  std::vector<Edge> picked;  // e_i1 .. e_ix, in pick order
};

struct GreedyTrace {
  std::vector<int> demand_order;  // outside vertices sorted by descending demand
  std::vector<GreedyStage> stages;
};

/// n - k/2 - 1 internally disjoint S-trees for |M| = k-1 with
/// 2 <= Delta(K_n[M]) <= k/2: one greedily patched tree per outside vertex
/// (maximum residual degree inside S, ties to the smallest label), then a
/// spanning packing of what is left of G[S]. The claimed degree floor
/// delta(G_i[S]) >= (k-2)/2 is asserted after every stage and a violation
/// raises InternalContradictionError.
TreeFamily construct_lemma11(int n, int k, const DeletionSet& m, const TerminalSet& s,
                             GreedyTrace* trace = nullptr);

struct FamilyCheck {
  bool ok = true;
  std::string message;  // pinpoints the first offending tree/pair/vertex/edge
};

/// Checks that every tree is a valid S-tree of g and that every pair meets
/// the mode's disjointness requirement.
FamilyCheck verify_family(const Graph& g, const TerminalSet& s, const TreeFamily& f,
                          DisjointMode mode);

/// Lemma-6 classification of a valid S-tree: kInside trees use exactly k-1
/// edges incident to S, kCrossing trees at least k. The counts are asserted;
/// a violation would falsify the classification lemma.
struct TreeClassification {
  TreeClass tree_class = TreeClass::kInside;
  int counted_edges = 0;  // edges with at least one endpoint in S
};
TreeClassification classify_tree(const SteinerTree& t, const TerminalSet& s, const Graph& g);

/// One tree per line as sorted "u-v" pairs; families end with a blank line.
std::string format_tree_family(const TreeFamily& f);

}  // namespace gconn

#endif
