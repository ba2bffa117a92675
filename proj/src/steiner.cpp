#include "gconn/steiner.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>
#include <unordered_set>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace gconn {

SteinerTree SteinerTree::of_edges(std::vector<Edge> edges) {
  SteinerTree t;
  std::sort(edges.begin(), edges.end());
  t.edges = std::move(edges);
  for (const Edge& e : t.edges) t.vertex_mask |= (1u << e.u) | (1u << e.v);
  return t;
}

namespace {

constexpr int kSolverVertexCap = 12;
constexpr long long kSubsetCap = 10000;

// Upper-triangle edge ids, row-major: (0,1) < (0,2) < ... < (n-2,n-1).
inline int edge_id(int n, int u, int v) { return u * (2 * n - u - 1) / 2 + (v - u - 1); }

struct ResidualKey {
  std::uint64_t lo = 0, hi = 0;
  int trees_left = 0;
  friend bool operator==(const ResidualKey& a, const ResidualKey& b) {
    return a.lo == b.lo && a.hi == b.hi && a.trees_left == b.trees_left;
  }
};

struct ResidualKeyHash {
  std::size_t operator()(const ResidualKey& k) const {
    std::uint64_t h = k.lo * 0x9e3779b97f4a7c15ull;
    h ^= k.hi + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    h ^= static_cast<std::uint64_t>(k.trees_left) * 0xff51afd7ed558ccdull;
    return static_cast<std::size_t>(h ^ (h >> 31));
  }
};

// Depth-first packing search: builds trees one at a time, each grown as a
// sequence of paths from the lowest uncovered terminal into the partial tree
// (neighbors tried in ascending order). Trees in a packing are forced into
// increasing order of their smallest edge id, which makes every packing
// reachable exactly once; failure states at tree boundaries are memoized on
// (residual edge set, trees still needed).
struct PackSearch {
  int n = 0;
  int k = 0;
  std::uint32_t smask = 0;
  DisjointMode mode = DisjointMode::kEdge;
  std::array<std::uint32_t, 32> adj{};
  std::unordered_set<ResidualKey, ResidualKeyHash> failed;
  std::vector<SteinerTree> found;  // filled on success

  // Scratch for the tree under construction.
  std::vector<Edge> tree_edges;
  std::array<int, 32> tree_deg{};

  // Lemma-6 budget of the residual at the current tree boundary, split into
  // edges inside G[S] and edges crossing to the complement; the tree under
  // construction draws these down as it grows.
  int level_inside_budget = 0;
  int level_cross_budget = 0;
  int cur_inside_used = 0;
  int cur_cross_used = 0;

  PackSearch(const Graph& g, const TerminalSet& s, DisjointMode m)
      : n(g.order()), k(s.k), smask(s.members), mode(m) {
    for (int v = 0; v < n; ++v) adj[v] = g.neighbors(v);
  }

  ResidualKey residual_key(int trees_left) const {
    ResidualKey key;
    key.trees_left = trees_left;
    for (int u = 0; u < n; ++u) {
      std::uint32_t higher = adj[u] >> (u + 1) << (u + 1);
      while (higher) {
        int v = lowest_bit(higher);
        higher &= higher - 1;
        int id = edge_id(n, u, v);
        if (id < 64)
          key.lo |= 1ull << id;
        else
          key.hi |= 1ull << (id - 64);
      }
    }
    return key;
  }

  int residual_degree(int v) const { return popcount32(adj[v]); }

  // Admissible upper bound on how many more disjoint S-trees the residual
  // can hold: per-terminal degrees plus the Lemma-6 edge budget over
  // E(G[S]) and E[S, S-bar].
  int packing_upper_bound() const {
    int ub = n;
    std::uint32_t rest = smask;
    while (rest) {
      int sv = lowest_bit(rest);
      rest &= rest - 1;
      ub = std::min(ub, residual_degree(sv));
    }
    int inside = 0, cross = 0;
    rest = smask;
    while (rest) {
      int sv = lowest_bit(rest);
      rest &= rest - 1;
      inside += popcount32(adj[sv] & smask);
      cross += popcount32(adj[sv] & ~smask);
    }
    inside /= 2;
    int a = inside / (k - 1);
    ub = std::min(ub, a + (inside + cross - a * (k - 1)) / k);
    return ub;
  }

  bool terminals_connected() const {
    int start = lowest_bit(smask);
    std::uint32_t comp = 1u << start;
    std::uint32_t frontier = comp;
    while (frontier) {
      std::uint32_t next = 0;
      std::uint32_t sub = frontier;
      while (sub) {
        int v = lowest_bit(sub);
        sub &= sub - 1;
        next |= adj[v] & ~comp;
      }
      comp |= next;
      frontier = next;
    }
    return (smask & ~comp) == 0;
  }

  // Can `from` still reach the partial tree without revisiting path vertices?
  bool can_reach_tree(int from, std::uint32_t tree_mask, std::uint32_t blocked) const {
    std::uint32_t comp = 1u << from;
    std::uint32_t frontier = comp;
    while (frontier) {
      std::uint32_t next = 0;
      std::uint32_t sub = frontier;
      while (sub) {
        int v = lowest_bit(sub);
        sub &= sub - 1;
        next |= adj[v] & ~comp & ~blocked;
      }
      if (next & tree_mask) return true;
      comp |= next;
      frontier = next;
    }
    return (comp & tree_mask) != 0;
  }

  bool feasible(int trees_left) {
    if (trees_left == 0) return true;
    if (packing_upper_bound() < trees_left) return false;
    if (!terminals_connected()) return false;
    ResidualKey key = residual_key(trees_left);
    if (failed.count(key)) return false;

    int inside = 0, cross = 0;
    std::uint32_t rest = smask;
    while (rest) {
      int sv = lowest_bit(rest);
      rest &= rest - 1;
      inside += popcount32(adj[sv] & smask);
      cross += popcount32(adj[sv] & ~smask);
    }
    level_inside_budget = inside / 2;
    level_cross_budget = cross;
    cur_inside_used = 0;
    cur_cross_used = 0;

    int s0 = lowest_bit(smask);
    tree_edges.clear();
    tree_deg.fill(0);
    if (grow_tree(1u << s0, trees_left)) return true;

    if (failed.size() > (1u << 22)) failed.clear();  // memory guard, correctness unaffected
    failed.insert(key);
    return false;
  }

  // After the current tree finishes covering `uncovered` more terminals
  // (>= 1 incident edge each), can the residual budget still feed the
  // remaining trees at Lemma-6 rates?
  bool budget_ok(int uncovered, int trees_left) const {
    int inside_rem = level_inside_budget - cur_inside_used;
    int cross_rem = level_cross_budget - cur_cross_used;
    int sum_rem = inside_rem + cross_rem - uncovered;
    if (sum_rem < 0) return false;
    int a = std::min(inside_rem / (k - 1), sum_rem / (k - 1));
    return a + (sum_rem - a * (k - 1)) / k >= trees_left - 1;
  }

  int edge_budget_class(const Edge& e) const {
    int ends = ((smask >> e.u) & 1u) + ((smask >> e.v) & 1u);
    return ends;  // 2 inside, 1 crossing, 0 free
  }

  // Adding one more tree edge at a terminal must leave it enough residual
  // degree for the trees that still follow.
  bool endpoint_ok(int v, int trees_left) const {
    if (!((smask >> v) & 1u)) return true;
    return residual_degree(v) - tree_deg[v] >= trees_left;
  }

  bool grow_tree(std::uint32_t tree_mask, int trees_left) {
    if ((smask & ~tree_mask) == 0) return complete_tree(tree_mask, trees_left);
    int target = lowest_bit(smask & ~tree_mask);
    if (!can_reach_tree(target, tree_mask, 0)) return false;
    return grow_path(target, 1u << target, tree_mask, trees_left);
  }

  bool grow_path(int end, std::uint32_t path_mask, std::uint32_t tree_mask, int trees_left) {
    if (!endpoint_ok(end, trees_left)) return false;
    {
      std::uint32_t candidates = adj[end] & ~path_mask;
      while (candidates) {
        int v = lowest_bit(candidates);
        candidates &= candidates - 1;
        if (!endpoint_ok(v, trees_left)) continue;
        Edge e(end, v);
        int cls = edge_budget_class(e);
        tree_edges.push_back(e);
        ++tree_deg[end];
        ++tree_deg[v];
        cur_inside_used += cls == 2;
        cur_cross_used += cls == 1;
        bool landing = (tree_mask >> v) & 1u;
        std::uint32_t covered = tree_mask | path_mask | (1u << v);
        bool ok = budget_ok(popcount32(smask & ~covered), trees_left);
        if (ok) {
          if (landing) {
            ok = grow_tree(tree_mask | path_mask, trees_left);
          } else {
            std::uint32_t blocked = path_mask & ~(1u << end);
            ok = can_reach_tree(v, tree_mask, blocked | (1u << end)) &&
                 grow_path(v, path_mask | (1u << v), tree_mask, trees_left);
          }
        }
        if (ok) return true;
        --tree_deg[end];
        --tree_deg[v];
        cur_inside_used -= cls == 2;
        cur_cross_used -= cls == 1;
        tree_edges.pop_back();
      }
    }
    return false;
  }

  bool complete_tree(std::uint32_t tree_mask, int trees_left) {
    std::array<std::uint32_t, 32> saved_adj = adj;
    int min_id = 1 << 30;
    for (const Edge& e : tree_edges) {
      adj[e.u] &= ~(1u << e.v);
      adj[e.v] &= ~(1u << e.u);
      min_id = std::min(min_id, edge_id(n, e.u, e.v));
    }
    if (mode == DisjointMode::kInternal) {
      std::uint32_t used_outside = tree_mask & ~smask;
      while (used_outside) {
        int v = lowest_bit(used_outside);
        used_outside &= used_outside - 1;
        std::uint32_t nb = adj[v];
        adj[v] = 0;
        while (nb) {
          int w = lowest_bit(nb);
          nb &= nb - 1;
          adj[w] &= ~(1u << v);
        }
      }
    }
    // Later trees are forced to strictly larger minimum edge ids.
    for (int u = 0; u < n && edge_id(n, u, u + 1) <= min_id; ++u) {
      std::uint32_t higher = adj[u] >> (u + 1) << (u + 1);
      while (higher) {
        int v = lowest_bit(higher);
        higher &= higher - 1;
        if (edge_id(n, u, v) > min_id) break;
        adj[u] &= ~(1u << v);
        adj[v] &= ~(1u << u);
      }
    }

    std::vector<Edge> snapshot_edges = tree_edges;
    std::array<int, 32> snapshot_deg = tree_deg;
    int saved_budget[4] = {level_inside_budget, level_cross_budget, cur_inside_used,
                           cur_cross_used};
    bool ok = feasible(trees_left - 1);
    if (ok) {
      found.push_back(SteinerTree::of_edges(snapshot_edges));
      return true;
    }
    adj = saved_adj;
    tree_edges = std::move(snapshot_edges);
    tree_deg = snapshot_deg;
    level_inside_budget = saved_budget[0];
    level_cross_budget = saved_budget[1];
    cur_inside_used = saved_budget[2];
    cur_cross_used = saved_budget[3];
    return false;
  }
};

TreeClass classify_edges(const std::vector<Edge>& edges, std::uint32_t smask) {
  for (const Edge& e : edges)
    if (!((smask >> e.u) & 1u) || !((smask >> e.v) & 1u)) return TreeClass::kCrossing;
  return TreeClass::kInside;
}

TreeFamily make_family(std::vector<SteinerTree> trees, std::uint32_t smask, DisjointMode mode) {
  TreeFamily fam;
  fam.mode = mode;
  for (SteinerTree& t : trees) {
    fam.classes.push_back(classify_edges(t.edges, smask));
    fam.trees.push_back(std::move(t));
  }
  return fam;
}

void check_local_preconditions(const Graph& g, const TerminalSet& s) {
  if (g.order() > kSolverVertexCap)
    throw CapacityError("exact Steiner packing limited to n <= 12, got " +
                        std::to_string(g.order()));
  if (s.k < 2) throw ParameterError("terminal set must have at least 2 vertices");
  if (s.members & ~g.vertex_mask()) throw ParameterError("terminal set not within graph");
}

}  // namespace

LocalResult steiner_pack(const Graph& g, const TerminalSet& s, DisjointMode mode) {
  check_local_preconditions(g, s);
  LocalResult result;
  result.family.mode = mode;
  if (!is_connected(g)) return result;

  PackSearch search(g, s, mode);
  int ub = search.packing_upper_bound();
  for (int t = ub; t >= 1; --t) {
    search.found.clear();
    if (search.feasible(t)) {
      // Trees come out in reverse construction order.
      std::reverse(search.found.begin(), search.found.end());
      result.count = t;
      result.family = make_family(std::move(search.found), s.members, mode);
      return result;
    }
  }
  return result;
}

LocalResult lambda_local(const Graph& g, const TerminalSet& s) {
  return steiner_pack(g, s, DisjointMode::kEdge);
}

LocalResult kappa_local(const Graph& g, const TerminalSet& s) {
  return steiner_pack(g, s, DisjointMode::kInternal);
}

namespace {

// Exact local value with a skip shortcut: when lambda(S) is already known to
// be >= cap the exact value is irrelevant to a running minimum, so only
// feasibility at cap is tested. Returns cap when skipped.
int local_value_capped(const Graph& g, const TerminalSet& s, DisjointMode mode, int cap) {
  PackSearch search(g, s, mode);
  int ub = std::min(search.packing_upper_bound(), cap);
  for (int t = ub; t >= 1; --t) {
    search.found.clear();
    if (search.feasible(t)) return t;
  }
  return 0;
}

std::vector<std::uint32_t> k_subsets(int n, int k) {
  std::vector<std::uint32_t> out;
  std::vector<int> pick(k);
  for (int i = 0; i < k; ++i) pick[i] = i;
  while (true) {
    std::uint32_t mask = 0;
    for (int v : pick) mask |= 1u << v;
    out.push_back(mask);
    int i = k - 1;
    while (i >= 0 && pick[i] == n - k + i) --i;
    if (i < 0) break;
    ++pick[i];
    for (int j = i + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }
  return out;
}

struct BlockResult {
  int value = 1 << 30;
  int first_index = -1;
};

// Sequential scan of one block with a running cap; only strict improvements
// below the cap are recorded. The result is a function of the block contents
// and the seed cap only, so dynamic scheduling over blocks cannot perturb
// the merged answer.
BlockResult scan_block(const Graph& g, const std::vector<std::uint32_t>& subsets,
                       std::size_t begin, std::size_t end, DisjointMode mode, int seed_cap) {
  BlockResult r;
  r.value = seed_cap;
  for (std::size_t i = begin; i < end; ++i) {
    TerminalSet s = TerminalSet::of(g.order(), subsets[i]);
    int v = local_value_capped(g, s, mode, r.value);
    if (v < r.value) {
      r.value = v;
      r.first_index = static_cast<int>(i);
    }
  }
  return r;
}

}  // namespace

GlobalResult generalized_connectivity(const Graph& g, int k, DisjointMode mode, int threads) {
  if (k < 2) throw ParameterError("k must be >= 2, got " + std::to_string(k));
  GlobalResult result;
  result.family.mode = mode;
  if (!is_connected(g)) {
    result.value = 0;
    return result;
  }
  if (g.order() < k) {
    result.value = 1;
    return result;
  }
  if (g.order() > kSolverVertexCap)
    throw CapacityError("exact sweep limited to n <= 12, got " + std::to_string(g.order()));

  std::vector<std::uint32_t> subsets = k_subsets(g.order(), k);
  if (static_cast<long long>(subsets.size()) > kSubsetCap)
    throw CapacityError("subset sweep too large: " + std::to_string(subsets.size()) +
                        " k-subsets");

  // The first subset is solved exactly and seeds every block's cap, so the
  // minimum and the first minimizing subset come out the same for any
  // thread count.
  LocalResult first = steiner_pack(g, TerminalSet::of(g.order(), subsets[0]), mode);
  BlockResult best;
  best.value = first.count;
  best.first_index = 0;

  constexpr std::size_t kBlock = 32;
  const std::size_t nblocks = (subsets.size() + kBlock - 1) / kBlock;
  std::vector<BlockResult> blocks(nblocks);

  bool parallel = threads > 1 && nblocks > 1;
#ifndef _OPENMP
  parallel = false;
#endif
  if (!parallel) {
    // Serial reference path: one scan with a single running bound.
    blocks.assign(1, scan_block(g, subsets, 1, subsets.size(), mode, best.value));
  } else {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(threads)
#endif
    for (std::size_t b = 0; b < nblocks; ++b) {
      std::size_t begin = std::max<std::size_t>(b * kBlock, 1);
      std::size_t end = std::min(begin + kBlock, subsets.size());
      if (b == 0) end = std::min<std::size_t>(kBlock, subsets.size());
      blocks[b] = scan_block(g, subsets, begin, end, mode, best.value);
    }
  }

  for (const BlockResult& r : blocks) {
    if (r.first_index >= 0 && r.value < best.value) best = r;
  }

  TerminalSet witness = TerminalSet::of(g.order(), subsets[best.first_index]);
  if (best.first_index == 0) {
    result.value = first.count;
    result.witness = std::move(witness);
    result.family = std::move(first.family);
    return result;
  }
  LocalResult local = steiner_pack(g, witness, mode);
  if (local.count != best.value)
    throw std::logic_error("sweep bookkeeping does not match the witness recomputation");
  result.value = local.count;
  result.witness = std::move(witness);
  result.family = std::move(local.family);
  return result;
}

namespace {

// Tiny dense-matrix max-flow (BFS augmenting paths, unit-ish capacities).
struct FlowNet {
  int size = 0;
  std::vector<int> cap;  // size x size

  explicit FlowNet(int nodes) : size(nodes), cap(nodes * nodes, 0) {}
  int& at(int a, int b) { return cap[a * size + b]; }

  int max_flow(int source, int sink) {
    int flow = 0;
    while (true) {
      std::vector<int> parent(size, -1);
      parent[source] = source;
      std::vector<int> queue = {source};
      std::size_t head = 0;
      while (head < queue.size() && parent[sink] < 0) {
        int v = queue[head++];
        for (int w = 0; w < size; ++w) {
          if (parent[w] < 0 && at(v, w) > 0) {
            parent[w] = v;
            queue.push_back(w);
          }
        }
      }
      if (parent[sink] < 0) return flow;
      for (int v = sink; v != source; v = parent[v]) {
        at(parent[v], v) -= 1;
        at(v, parent[v]) += 1;
      }
      ++flow;
    }
  }
};

}  // namespace

int menger_check(const Graph& g, int u, int v, DisjointMode mode) {
  const int n = g.order();
  if (u == v) throw ParameterError("menger check needs two distinct vertices");
  if (u < 0 || v < 0 || u >= n || v >= n) throw ParameterError("menger vertex out of range");

  if (mode == DisjointMode::kEdge) {
    FlowNet net(n);
    for (const Edge& e : g.edges()) {
      net.at(e.u, e.v) = 1;
      net.at(e.v, e.u) = 1;
    }
    return net.max_flow(u, v);
  }

  // Vertex-split network: node x enters at x and exits at x + n; interior
  // vertices get unit through-capacity.
  FlowNet net(2 * n);
  for (int x = 0; x < n; ++x) net.at(x, x + n) = (x == u || x == v) ? n : 1;
  for (const Edge& e : g.edges()) {
    net.at(e.u + n, e.v) = 1;
    net.at(e.v + n, e.u) = 1;
  }
  return net.max_flow(u + n, v);
}

}  // namespace gconn
