#include "gconn/spanning_pack.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace gconn {

Partition Partition::of_blocks(const Graph& g, std::vector<std::uint32_t> blocks) {
  std::sort(blocks.begin(), blocks.end(),
            [](std::uint32_t a, std::uint32_t b) { return lowest_bit(a) < lowest_bit(b); });
  std::uint32_t seen = 0;
  int intra = 0;
  for (std::uint32_t b : blocks) {
    if (!b || (seen & b)) throw ParameterError("partition blocks must be nonempty and disjoint");
    seen |= b;
    std::uint32_t rest = b;
    while (rest) {
      int v = lowest_bit(rest);
      rest &= rest - 1;
      intra += popcount32(g.neighbors(v) & b);
    }
  }
  if (seen != g.vertex_mask()) throw ParameterError("partition blocks must cover V");
  Partition p;
  p.blocks = std::move(blocks);
  p.crossing = g.size() - intra / 2;
  return p;
}

Partition Partition::singletons(const Graph& g) {
  std::vector<std::uint32_t> blocks;
  for (int v = 0; v < g.order(); ++v) blocks.push_back(1u << v);
  return of_blocks(g, std::move(blocks));
}

namespace {

// State for the incremental matroid-union packer: l forests over a fixed
// edge list, each edge owned by at most one forest.
struct ForestPack {
  int n = 0;
  int l = 0;
  std::vector<Edge> edge_list;
  std::vector<int> owner;                           // edge id -> forest or -1
  std::vector<std::array<std::uint32_t, 32>> fadj;  // forest adjacency rows
  std::vector<std::vector<int>> eid_at;             // eid_at[u] packed: id lookup via matrix
  std::vector<int> id_matrix;                       // n*n, -1 for non-edges

  explicit ForestPack(const Graph& g, int forests)
      : n(g.order()), l(forests), edge_list(g.edges()) {
    owner.assign(edge_list.size(), -1);
    fadj.assign(l, {});
    id_matrix.assign(n * n, -1);
    for (int id = 0; id < static_cast<int>(edge_list.size()); ++id) {
      id_matrix[edge_list[id].u * n + edge_list[id].v] = id;
      id_matrix[edge_list[id].v * n + edge_list[id].u] = id;
    }
  }

  int edge_id(int u, int v) const { return id_matrix[u * n + v]; }

  // Component of vertex s in forest i.
  std::uint32_t component(int i, int s) const {
    std::uint32_t comp = 1u << s;
    std::uint32_t frontier = comp;
    while (frontier) {
      std::uint32_t next = 0;
      std::uint32_t rest = frontier;
      while (rest) {
        int v = lowest_bit(rest);
        rest &= rest - 1;
        next |= fadj[i][v] & ~comp;
      }
      comp |= next;
      frontier = next;
    }
    return comp;
  }

  bool independent(int i, int eid) const {
    const Edge& e = edge_list[eid];
    return !((component(i, e.u) >> e.v) & 1u);
  }

  // Edge ids on the unique path between the endpoints of eid in forest i
  // (the fundamental cycle of eid, minus eid itself). Empty when independent.
  std::vector<int> cycle_edges(int i, int eid) const {
    const Edge& e = edge_list[eid];
    std::vector<int> parent(n, -1);
    std::vector<int> stack = {e.u};
    std::vector<bool> seen(n, false);
    seen[e.u] = true;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      std::uint32_t nb = fadj[i][v];
      while (nb) {
        int w = lowest_bit(nb);
        nb &= nb - 1;
        if (!seen[w]) {
          seen[w] = true;
          parent[w] = v;
          stack.push_back(w);
        }
      }
    }
    std::vector<int> path;
    if (!seen[e.v]) return path;
    for (int v = e.v; v != e.u; v = parent[v]) path.push_back(edge_id(v, parent[v]));
    return path;
  }

  void insert(int i, int eid) {
    const Edge& e = edge_list[eid];
    fadj[i][e.u] |= 1u << e.v;
    fadj[i][e.v] |= 1u << e.u;
    owner[eid] = i;
  }

  void erase(int i, int eid) {
    const Edge& e = edge_list[eid];
    fadj[i][e.u] &= ~(1u << e.v);
    fadj[i][e.v] &= ~(1u << e.u);
    owner[eid] = -1;
  }

  // Tries to place eid into the union, possibly reshuffling edges between
  // forests along an exchange chain. Returns false when blocked.
  bool augment(int eid) {
    std::vector<int> prev(edge_list.size(), -2);  // -2 unvisited, -1 root
    std::vector<int> queue = {eid};
    prev[eid] = -1;
    std::size_t head = 0;
    while (head < queue.size()) {
      int f = queue[head++];
      for (int i = 0; i < l; ++i) {
        if (independent(i, f)) {
          // Exchange chain: f enters forest i, its predecessor takes f's
          // old slot, and so on back to the root edge.
          int cur = f;
          int dest = i;
          while (true) {
            int src = owner[cur];
            if (src >= 0) erase(src, cur);
            insert(dest, cur);
            if (src < 0 || prev[cur] < 0) {
              assert(prev[cur] == -1);
              return true;
            }
            cur = prev[cur];
            dest = src;
          }
        }
        for (int c : cycle_edges(i, f)) {
          if (prev[c] == -2) {
            prev[c] = f;
            queue.push_back(c);
          }
        }
      }
    }
    return false;
  }

  int union_size() const {
    int total = 0;
    for (int o : owner)
      if (o >= 0) ++total;
    return total;
  }

  // Closure of the unplaced edges under fundamental-cycle reachability.
  // Returns the reached edge ids; every forest spans this set tightly, which
  // is what makes the derived partition violating.
  std::vector<int> blocked_closure() const {
    std::vector<char> reached(edge_list.size(), 0);
    std::vector<int> queue;
    for (int id = 0; id < static_cast<int>(edge_list.size()); ++id) {
      if (owner[id] < 0) {
        reached[id] = 1;
        queue.push_back(id);
      }
    }
    std::size_t head = 0;
    while (head < queue.size()) {
      int f = queue[head++];
      for (int i = 0; i < l; ++i) {
        if (independent(i, f))
          throw std::logic_error("packer: blocked edge became placeable; augmentation bug");
        for (int c : cycle_edges(i, f)) {
          if (!reached[c]) {
            reached[c] = 1;
            queue.push_back(c);
          }
        }
      }
    }
    std::vector<int> out;
    for (int id = 0; id < static_cast<int>(edge_list.size()); ++id)
      if (reached[id]) out.push_back(id);
    return out;
  }
};

Partition components_partition(const Graph& g) {
  return Partition::of_blocks(g, connected_components(g));
}

}  // namespace

PackCertificate pack_spanning(const Graph& g, int l) {
  if (l < 1) throw ParameterError("tree count must be >= 1, got " + std::to_string(l));
  if (g.order() < 1) throw ParameterError("graph must have at least one vertex");

  PackCertificate cert;
  cert.requested = l;

  const int n = g.order();
  if (n == 1) {
    cert.trees.assign(l, {});
    return cert;
  }
  if (!is_connected(g)) {
    cert.witness = components_partition(g);
    return cert;
  }

  ForestPack pack(g, l);
  for (int eid = 0; eid < static_cast<int>(pack.edge_list.size()); ++eid) pack.augment(eid);

  if (pack.union_size() == l * (n - 1)) {
    cert.trees.assign(l, {});
    for (int eid = 0; eid < static_cast<int>(pack.edge_list.size()); ++eid)
      if (pack.owner[eid] >= 0) cert.trees[pack.owner[eid]].push_back(pack.edge_list[eid]);
    return cert;
  }

  // Union is maximum, so the closure of the unplaced edges yields a
  // partition with crossing < l(p-1): every forest places n - p edges
  // inside the closure components, and all crossing edges are forest edges.
  std::vector<int> closure = pack.blocked_closure();
  Graph closure_graph(n);
  for (int eid : closure) closure_graph.add_edge(pack.edge_list[eid].u, pack.edge_list[eid].v);
  Partition witness = components_partition(closure_graph);
  witness = Partition::of_blocks(g, witness.blocks);  // recompute crossing against g
  if (witness.crossing >= l * (witness.block_count() - 1))
    throw std::logic_error("packer: derived partition is not violating; closure bug");
  cert.witness = std::move(witness);
  return cert;
}

namespace {

struct SweepBest {
  bool found = false;
  int block_count = 0;
  int crossing = 0;
  std::vector<std::uint32_t> blocks;

  // Primary fewest blocks, then fewest crossing; lex-first kept by never
  // replacing on ties.
  bool improves(int p, int cross) const {
    if (!found) return true;
    if (p != block_count) return p < block_count;
    return cross < crossing;
  }

  void take(int p, int cross, const std::uint32_t* bs) {
    found = true;
    block_count = p;
    crossing = cross;
    blocks.assign(bs, bs + p);
  }
};

// Expands restricted-growth strings from position pos with nblocks blocks
// already open, testing each completed partition for violation.
void sweep_rgs(const Graph& g, int l, int pos, int nblocks, std::uint32_t* blocks,
               SweepBest& best) {
  const int n = g.order();
  if (pos == n) {
    int intra = 0;
    for (int b = 0; b < nblocks; ++b) {
      std::uint32_t rest = blocks[b];
      while (rest) {
        int v = lowest_bit(rest);
        rest &= rest - 1;
        intra += popcount32(g.neighbors(v) & blocks[b]);
      }
    }
    int cross = g.size() - intra / 2;
    if (cross < l * (nblocks - 1) && best.improves(nblocks, cross))
      best.take(nblocks, cross, blocks);
    return;
  }
  for (int b = 0; b <= nblocks && b < n; ++b) {
    blocks[b] |= 1u << pos;
    sweep_rgs(g, l, pos + 1, std::max(nblocks, b + 1), blocks, best);
    blocks[b] &= ~(1u << pos);
  }
}

}  // namespace

std::optional<Partition> violating_partition(const Graph& g, int l, int threads) {
  if (l < 1) throw ParameterError("tree count must be >= 1, got " + std::to_string(l));
  if (g.order() > 12)
    throw CapacityError("partition sweep limited to n <= 12, got " + std::to_string(g.order()));

  const int n = g.order();
  SweepBest best;

  bool parallel = threads > 1 && n > 4;
#ifndef _OPENMP
  parallel = false;
#endif
  if (!parallel) {
    std::array<std::uint32_t, 12> blocks{};
    blocks[0] = 1u;
    sweep_rgs(g, l, 1, 1, blocks.data(), best);
  } else {
    // Shard by RGS prefix; each shard's lex-first result is independent of
    // the schedule, so the min-merge is thread-count invariant.
    const int prefix_len = std::min(n, 5);
    struct Prefix {
      std::array<std::uint32_t, 12> blocks{};
      int nblocks = 0;
    };
    std::vector<Prefix> prefixes;
    {
      Prefix p;
      p.blocks[0] = 1u;
      p.nblocks = 1;
      std::vector<Prefix> frontier = {p};
      for (int pos = 1; pos < prefix_len; ++pos) {
        std::vector<Prefix> next;
        for (const Prefix& q : frontier) {
          for (int b = 0; b <= q.nblocks && b < n; ++b) {
            Prefix r = q;
            r.blocks[b] |= 1u << pos;
            r.nblocks = std::max(q.nblocks, b + 1);
            next.push_back(r);
          }
        }
        frontier = std::move(next);
      }
      prefixes = std::move(frontier);
    }
    std::vector<SweepBest> results(prefixes.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(threads)
#endif
    for (std::size_t i = 0; i < prefixes.size(); ++i) {
      Prefix p = prefixes[i];
      sweep_rgs(g, l, prefix_len, p.nblocks, p.blocks.data(), results[i]);
    }
    for (const SweepBest& r : results) {
      if (r.found && best.improves(r.block_count, r.crossing))
        best.take(r.block_count, r.crossing, r.blocks.data());
    }
  }

  if (!best.found) return std::nullopt;
  return Partition::of_blocks(g, best.blocks);
}

int spanning_tree_packing_number(const Graph& g) {
  const int n = g.order();
  if (n <= 1) return 0;
  if (!is_connected(g)) return 0;
  for (int l = g.size() / (n - 1); l >= 1; --l)
    if (pack_spanning(g, l).has_trees()) return l;
  return 0;
}

}  // namespace gconn
