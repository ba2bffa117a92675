#include "gconn/construct.hpp"

#include <algorithm>
#include <array>
#include <sstream>

#include "gconn/spanning_pack.hpp"

namespace gconn {

namespace {

std::string describe_instance(int n, const DeletionSet& m) {
  std::ostringstream out;
  out << "n=" << n << " M={";
  for (std::size_t i = 0; i < m.edges.size(); ++i) {
    if (i) out << ',';
    out << m.edges[i].u << '-' << m.edges[i].v;
  }
  out << "}";
  return out.str();
}

SteinerTree star_tree(int root, const std::vector<int>& targets,
                      const std::vector<Edge>& extra = {}) {
  std::vector<Edge> edges;
  edges.reserve(targets.size() + extra.size());
  for (int t : targets) edges.push_back(Edge(root, t));
  edges.insert(edges.end(), extra.begin(), extra.end());
  return SteinerTree::of_edges(std::move(edges));
}

TreeClass class_of(const std::vector<Edge>& edges, std::uint32_t smask) {
  for (const Edge& e : edges)
    if (!((smask >> e.u) & 1u) || !((smask >> e.v) & 1u)) return TreeClass::kCrossing;
  return TreeClass::kInside;
}

TreeFamily seal_family(std::vector<SteinerTree> trees, std::uint32_t smask, DisjointMode mode,
                       int expected, const std::string& instance) {
  if (static_cast<int>(trees.size()) != expected)
    throw InternalContradictionError("builder produced " + std::to_string(trees.size()) +
                                     " trees, expected " + std::to_string(expected) + " at " +
                                     instance);
  TreeFamily fam;
  fam.mode = mode;
  for (SteinerTree& t : trees) {
    fam.classes.push_back(class_of(t.edges, smask));
    fam.trees.push_back(std::move(t));
  }
  return fam;
}

// Packs `count` spanning trees of the clique on `order` minus the given
// (global-label) edges, mapped back to global labels. The callers invoke
// this only where the packing lemma guarantees feasibility, so a packer
// refusal is a falsification, not an error state.
std::vector<SteinerTree> inside_pack(const std::vector<int>& order,
                                     const std::vector<Edge>& deleted, int count,
                                     const std::string& instance) {
  const int k = static_cast<int>(order.size());
  std::array<int, Graph::kMaxVertices> local{};
  for (int i = 0; i < k; ++i) local[order[i]] = i;

  Graph g = Graph::complete(k);
  for (const Edge& e : deleted) g.remove_edge(local[e.u], local[e.v]);

  PackCertificate cert = pack_spanning(g, count);
  if (!cert.has_trees())
    throw InternalContradictionError(
        "guaranteed spanning packing failed (" + std::to_string(count) + " trees on " +
        std::to_string(k) + " vertices, " + std::to_string(deleted.size()) +
        " deletions) at " + instance);

  std::vector<SteinerTree> out;
  for (const std::vector<Edge>& tree : cert.trees) {
    std::vector<Edge> mapped;
    mapped.reserve(tree.size());
    for (const Edge& e : tree) mapped.push_back(Edge(order[e.u], order[e.v]));
    out.push_back(SteinerTree::of_edges(std::move(mapped)));
  }
  return out;
}

// How the matching M meets S: matched pairs inside S (u listed before w in
// the terminal order), terminals matched across the cut with their partners,
// unmatched terminals, and the outside vertices free of S-partners.
struct MatchingShape {
  std::vector<int> inside_u, inside_w;
  std::vector<int> crossing_u, crossing_w;
  std::vector<int> unsaturated;
  std::vector<int> outside_free;
};

MatchingShape matching_shape(const DeletionSet& m, const TerminalSet& s) {
  std::array<int, Graph::kMaxVertices> partner;
  partner.fill(-1);
  for (const Edge& e : m.edges) {
    partner[e.u] = e.v;
    partner[e.v] = e.u;
  }
  MatchingShape shape;
  std::array<int, Graph::kMaxVertices> pos{};
  for (std::size_t i = 0; i < s.s_order.size(); ++i) pos[s.s_order[i]] = static_cast<int>(i);
  for (int u : s.s_order) {
    int p = partner[u];
    if (p < 0) {
      shape.unsaturated.push_back(u);
    } else if (s.contains(p)) {
      if (pos[u] < pos[p]) {
        shape.inside_u.push_back(u);
        shape.inside_w.push_back(p);
      }
    } else {
      shape.crossing_u.push_back(u);
      shape.crossing_w.push_back(p);
    }
  }
  for (int w : s.sbar_order) {
    bool is_partner = false;
    for (int cw : shape.crossing_w) is_partner |= (cw == w);
    if (!is_partner) shape.outside_free.push_back(w);
  }
  return shape;
}

std::vector<int> s_minus(const TerminalSet& s, int excluded) {
  std::vector<int> out;
  for (int v : s.s_order)
    if (v != excluded) out.push_back(v);
  return out;
}

std::vector<Edge> concat(std::vector<Edge> a, const std::vector<Edge>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

// Shared Lemma-10 engine; the kappa and lambda entry points differ only in
// their |M| precondition and in the pivot case, which exists for edge
// disjointness only (the pivot vertex is shared between trees).
TreeFamily lemma10_build(int n, int k, const DeletionSet& m, const TerminalSet& s,
                         DisjointMode mode) {
  const std::string instance = describe_instance(n, m);
  const int target = n - k / 2 - 1;
  MatchingShape shape = matching_shape(m, s);
  const int r = static_cast<int>(shape.inside_u.size());
  const int cross = static_cast<int>(shape.crossing_u.size());

  std::vector<Edge> inside_pairs;
  for (int i = 0; i < r; ++i) inside_pairs.push_back(Edge(shape.inside_u[i], shape.inside_w[i]));

  // Proof-order listing of S: matched-inside u's, cross-matched, unmatched,
  // then the inside partners.
  std::vector<int> proof_order = shape.inside_u;
  proof_order.insert(proof_order.end(), shape.crossing_u.begin(), shape.crossing_u.end());
  proof_order.insert(proof_order.end(), shape.unsaturated.begin(), shape.unsaturated.end());
  proof_order.insert(proof_order.end(), shape.inside_w.begin(), shape.inside_w.end());

  std::vector<SteinerTree> trees;

  if (cross == 0) {
    // M avoids the cut entirely: pack G[S] and star every outside vertex.
    for (SteinerTree& t : inside_pack(proof_order, inside_pairs, (k - 2) / 2, instance))
      trees.push_back(std::move(t));
    for (int v : shape.outside_free) trees.push_back(star_tree(v, s.s_order));
  } else if (!shape.unsaturated.empty()) {
    // Patch path through the cross-matched terminals, ending unmatched; the
    // j-th rooted tree reclaims the j-th path edge.
    std::vector<int> path = shape.crossing_u;
    path.push_back(shape.unsaturated.front());
    std::vector<Edge> path_edges;
    for (int j = 0; j < cross; ++j) path_edges.push_back(Edge(path[j], path[j + 1]));
    for (SteinerTree& t :
         inside_pack(proof_order, concat(inside_pairs, path_edges), (k - 2) / 2, instance))
      trees.push_back(std::move(t));
    for (int j = 0; j < cross; ++j)
      trees.push_back(
          star_tree(shape.crossing_w[j], s_minus(s, shape.crossing_u[j]), {path_edges[j]}));
    for (int v : shape.outside_free) trees.push_back(star_tree(v, s.s_order));
  } else if (r == 0) {
    // Every terminal matched across the cut (needs |M| >= k, so only the
    // maximum-matching regime): route every partner tree through the last
    // partner as pivot. Trees share the pivot, hence edge mode only.
    if (mode != DisjointMode::kEdge)
      throw InternalContradictionError("pivot case reached in internal mode at " + instance);
    const int pivot = shape.crossing_w[k - 1];
    for (SteinerTree& t : inside_pack(proof_order, {}, k / 2, instance))
      trees.push_back(std::move(t));
    for (int i = 0; i + 1 < k; ++i) {
      std::vector<Edge> patch = {Edge(shape.crossing_u[i], pivot),
                                 Edge(shape.crossing_w[i], pivot)};
      trees.push_back(star_tree(shape.crossing_w[i], s_minus(s, shape.crossing_u[i]), patch));
    }
    for (int v : shape.outside_free) trees.push_back(star_tree(v, s.s_order));
  } else if (cross == 2 && k == 4) {
    // The one hand-built figure: S = {u1, u2, u3, w1} with u1w1 deleted.
    const int u1 = shape.inside_u[0], w1 = shape.inside_w[0];
    const int u2 = shape.crossing_u[0], u3 = shape.crossing_u[1];
    const int p2 = shape.crossing_w[0], p3 = shape.crossing_w[1];
    trees.push_back(SteinerTree::of_edges({Edge(u1, u2), Edge(u1, p2), Edge(w1, p2), Edge(u3, p2)}));
    trees.push_back(SteinerTree::of_edges({Edge(u1, u3), Edge(u2, u3), Edge(u2, w1)}));
    trees.push_back(SteinerTree::of_edges({Edge(u1, p3), Edge(u2, p3), Edge(w1, p3), Edge(u3, w1)}));
    for (int v : shape.outside_free) trees.push_back(star_tree(v, s.s_order));
  } else if (cross == 2) {
    // k >= 6: two partner trees, each re-attaching its terminal through one
    // inside edge; those two inside edges join the packing deletions.
    const int c0 = shape.crossing_u[0], c1 = shape.crossing_u[1];
    const int p0 = shape.crossing_w[0], p1 = shape.crossing_w[1];
    const Edge reattach0(shape.inside_u[1], c0);
    const Edge reattach1(shape.inside_u[0], c1);
    trees.push_back(star_tree(p0, s_minus(s, c0), {reattach0}));
    trees.push_back(star_tree(p1, s_minus(s, c1), {reattach1}));
    std::vector<Edge> deletions = concat(inside_pairs, {reattach0, reattach1});
    for (SteinerTree& t : inside_pack(proof_order, deletions, (k - 2) / 2, instance))
      trees.push_back(std::move(t));
    for (int v : shape.outside_free) trees.push_back(star_tree(v, s.s_order));
  } else {
    // 4 <= s <= k-2 with everything saturated: patch cycle through the
    // cross-matched terminals.
    std::vector<Edge> cycle_edges;
    for (int j = 0; j < cross; ++j)
      cycle_edges.push_back(Edge(shape.crossing_u[j], shape.crossing_u[(j + 1) % cross]));
    for (SteinerTree& t :
         inside_pack(proof_order, concat(inside_pairs, cycle_edges), (k - 2) / 2, instance))
      trees.push_back(std::move(t));
    for (int j = 0; j < cross; ++j)
      trees.push_back(
          star_tree(shape.crossing_w[j], s_minus(s, shape.crossing_u[j]), {cycle_edges[j]}));
    for (int v : shape.outside_free) trees.push_back(star_tree(v, s.s_order));
  }

  return seal_family(std::move(trees), s.members, mode, target, instance);
}

void check_lemma10_common(int n, int k, const DeletionSet& m, const TerminalSet& s) {
  if (m.n != n) throw ParameterError("deletion set order does not match n");
  if (k % 2 != 0 || k < 4 || k > n) throw ParameterError("requires even k with 4 <= k <= n");
  if (s.k != k) throw ParameterError("terminal set size does not match k");
  if (m.max_degree != 1) throw ParameterError("M must be a matching (max degree 1)");
}

}  // namespace

TreeFamily construct_lemma9(int n, const DeletionSet& m) {
  if (m.n != n) throw ParameterError("deletion set order does not match n");
  if (n % 2 != 0 || n < 4) throw ParameterError("requires even n >= 4");
  if (m.size() < 1 || m.size() > n - 1)
    throw ParameterError("requires 1 <= |M| <= n-1, got |M| = " + std::to_string(m.size()));
  if (m.max_degree < 1 || m.max_degree > n / 2)
    throw ParameterError("requires 1 <= Delta(K_n[M]) <= n/2");

  std::vector<int> identity(n);
  for (int i = 0; i < n; ++i) identity[i] = i;
  std::vector<SteinerTree> trees =
      inside_pack(identity, m.edges, (n - 2) / 2, describe_instance(n, m));

  TerminalSet all = TerminalSet::of(n, Graph::complete(n).vertex_mask());
  return seal_family(std::move(trees), all.members, DisjointMode::kEdge, (n - 2) / 2,
                     describe_instance(n, m));
}

TreeFamily construct_lemma10_kappa(int n, int k, const DeletionSet& m, const TerminalSet& s) {
  check_lemma10_common(n, k, m, s);
  if (m.size() != k - 1)
    throw ParameterError("requires |M| = k-1, got |M| = " + std::to_string(m.size()));
  return lemma10_build(n, k, m, s, DisjointMode::kInternal);
}

TreeFamily construct_lemma10_lambda(int n, int k, const DeletionSet& m, const TerminalSet& s) {
  check_lemma10_common(n, k, m, s);
  if (m.size() != n / 2)
    throw ParameterError("requires a maximum matching, |M| = floor(n/2), got |M| = " +
                         std::to_string(m.size()));
  return lemma10_build(n, k, m, s, DisjointMode::kEdge);
}

TreeFamily construct_lemma11(int n, int k, const DeletionSet& m, const TerminalSet& s,
                             GreedyTrace* trace) {
  const std::string instance = describe_instance(n, m);
  if (m.n != n) throw ParameterError("deletion set order does not match n");
  if (k % 2 != 0 || k < 4 || k > n) throw ParameterError("requires even k with 4 <= k <= n");
  if (s.k != k) throw ParameterError("terminal set size does not match k");
  if (m.size() != k - 1)
    throw ParameterError("requires |M| = k-1, got |M| = " + std::to_string(m.size()));
  if (m.max_degree < 2 || m.max_degree > k / 2)
    throw ParameterError("requires 2 <= Delta(K_n[M]) <= k/2");

  if (n == k) {
    TreeFamily packed = construct_lemma9(n, m);
    packed.mode = DisjointMode::kInternal;
    return packed;
  }

  const int target = n - k / 2 - 1;
  const std::uint32_t smask = s.members;

  std::vector<Edge> inside_deleted;
  bool any_crossing = false;
  for (const Edge& e : m.edges) {
    bool eu = s.contains(e.u), ev = s.contains(e.v);
    if (eu && ev) inside_deleted.push_back(e);
    if (eu != ev) any_crossing = true;
  }

  if (!any_crossing) {
    // M splits between G[S] and G[S-bar]; only the inside part matters.
    std::vector<SteinerTree> trees =
        inside_pack(s.s_order, inside_deleted, (k - 2) / 2, instance);
    for (int w : s.sbar_order) trees.push_back(star_tree(w, s.s_order));
    return seal_family(std::move(trees), smask, DisjointMode::kInternal, target, instance);
  }

  // Greedy stage per outside vertex, most M-burdened first (ties keep the
  // complement-label order).
  std::array<int, Graph::kMaxVertices> demand{};
  for (const Edge& e : m.edges) {
    if (s.contains(e.u) != s.contains(e.v)) {
      int w = s.contains(e.u) ? e.v : e.u;
      ++demand[w];
    }
  }
  std::vector<int> w_sequence = s.sbar_order;
  std::stable_sort(w_sequence.begin(), w_sequence.end(),
                   [&demand](int a, int b) { return demand[a] > demand[b]; });
  if (trace) {
    trace->demand_order = w_sequence;
    trace->stages.clear();
  }

  // Residual adjacency of G = K_n \ M; only edges inside S are ever removed.
  std::array<std::uint32_t, Graph::kMaxVertices> adj{};
  {
    Graph g = delete_edges(Graph::complete(n), m);
    for (int v = 0; v < n; ++v) adj[v] = g.neighbors(v);
  }
  auto inside_degree = [&](int v) { return popcount32(adj[v] & smask); };

  std::vector<SteinerTree> trees;
  std::vector<Edge> picked_total;

  for (std::size_t stage_index = 0; stage_index < w_sequence.size(); ++stage_index) {
    int w = w_sequence[stage_index];
    // Donor duties still owed to later stage roots; a receiver pick must
    // leave its target enough inside degree for these plus the (k-2)/2
    // floor, or the closing packing would starve.
    std::array<int, Graph::kMaxVertices> future_duty{};
    for (std::size_t later = stage_index + 1; later < w_sequence.size(); ++later)
      for (int u : s.s_order)
        if (m.contains(u, w_sequence[later])) ++future_duty[u];
    GreedyStage stage;
    stage.root = w;
    stage.demand = demand[w];
    std::vector<int> s2;
    for (int u : s.s_order) {
      if (m.contains(u, w))
        stage.blocked.push_back(u);
      else
        s2.push_back(u);
    }
    stage.open = s2;

    std::uint32_t remaining_s1 = 0;
    for (int u : stage.blocked) remaining_s1 |= 1u << u;
    std::uint32_t s2_mask = smask & ~remaining_s1;

    for (int j = 0; j < stage.demand; ++j) {
      // Donor: max residual degree inside S, smallest label.
      int donor = -1;
      for (int u : s.s_order) {
        if (!((remaining_s1 >> u) & 1u)) continue;
        if (donor < 0 || inside_degree(u) > inside_degree(donor)) donor = u;
      }
      // Receiver: adjacent to the donor, max residual degree, smallest
      // label; candidates whose floor-plus-duty budget the pick would
      // breach are avoided while an affordable candidate exists.
      int receiver = -1;
      std::uint32_t adjacent_open = adj[donor] & s2_mask;
      std::uint32_t affordable = 0;
      {
        std::uint32_t rest = adjacent_open;
        while (rest) {
          int u = lowest_bit(rest);
          rest &= rest - 1;
          if (inside_degree(u) - 1 >= (k - 2) / 2 + future_duty[u]) affordable |= 1u << u;
        }
      }
      std::uint32_t pool = affordable ? affordable : adjacent_open;
      for (int u : s.s_order) {
        if (!((pool >> u) & 1u)) continue;
        if (receiver < 0 || inside_degree(u) > inside_degree(receiver)) receiver = u;
      }
      if (receiver < 0)
        throw InternalContradictionError("greedy stage found no open neighbor for terminal " +
                                         std::to_string(donor) + " at " + instance);
      Edge e(donor, receiver);
      adj[e.u] &= ~(1u << e.v);
      adj[e.v] &= ~(1u << e.u);
      remaining_s1 &= ~(1u << donor);
      stage.picked.push_back(e);
      picked_total.push_back(e);
    }

    trees.push_back(star_tree(w, s2, stage.picked));
    if (trace) trace->stages.push_back(stage);

    // The guaranteed degree floor, asserted live after every stage.
    for (int u : s.s_order) {
      if (inside_degree(u) < (k - 2) / 2) {
        std::ostringstream dump;
        dump << "greedy degree floor violated: terminal " << u << " has inside degree "
             << inside_degree(u) << " < " << (k - 2) / 2 << " after stage rooted at " << w
             << " at " << instance;
        throw InternalContradictionError(dump.str());
      }
    }
  }

  for (SteinerTree& t :
       inside_pack(s.s_order, concat(inside_deleted, picked_total), (k - 2) / 2, instance))
    trees.push_back(std::move(t));

  return seal_family(std::move(trees), smask, DisjointMode::kInternal, target, instance);
}

namespace {

std::string tree_label(int index) { return "tree " + std::to_string(index); }

bool tree_is_valid(const Graph& g, const TerminalSet& s, const SteinerTree& t,
                   std::string* why) {
  if (t.edges.empty()) {
    *why = "has no edges";
    return false;
  }
  std::uint32_t mask = 0;
  for (std::size_t i = 0; i < t.edges.size(); ++i) {
    const Edge& e = t.edges[i];
    if (e.u < 0 || e.v >= g.order()) {
      *why = "edge endpoint out of range";
      return false;
    }
    if (!g.has_edge(e.u, e.v)) {
      *why = "edge " + std::to_string(e.u) + "-" + std::to_string(e.v) + " not in graph";
      return false;
    }
    if (i > 0 && !(t.edges[i - 1] < e)) {
      *why = "edges not sorted/duplicated at " + std::to_string(e.u) + "-" + std::to_string(e.v);
      return false;
    }
    mask |= (1u << e.u) | (1u << e.v);
  }
  if (mask != t.vertex_mask) {
    *why = "vertex mask does not match edges";
    return false;
  }
  if (static_cast<int>(t.edges.size()) != popcount32(mask) - 1) {
    *why = "edge count " + std::to_string(t.edges.size()) + " is not |V(T)|-1";
    return false;
  }
  // Connectivity over tree edges; with |E| = |V|-1 this also rules out cycles.
  std::uint32_t comp = 1u << lowest_bit(mask);
  bool grew = true;
  while (grew) {
    grew = false;
    for (const Edge& e : t.edges) {
      std::uint32_t have = ((comp >> e.u) & 1u) + ((comp >> e.v) & 1u);
      if (have == 1) {
        comp |= (1u << e.u) | (1u << e.v);
        grew = true;
      }
    }
  }
  if (comp != mask) {
    *why = "edges do not form a connected tree";
    return false;
  }
  if (s.members & ~mask) {
    *why = "terminal " + std::to_string(lowest_bit(s.members & ~mask)) + " not covered";
    return false;
  }
  return true;
}

}  // namespace

FamilyCheck verify_family(const Graph& g, const TerminalSet& s, const TreeFamily& f,
                          DisjointMode mode) {
  FamilyCheck check;
  std::string why;
  for (int i = 0; i < f.size(); ++i) {
    if (!tree_is_valid(g, s, f.trees[i], &why)) {
      check.ok = false;
      check.message = tree_label(i) + ": " + why;
      return check;
    }
    if (i < static_cast<int>(f.classes.size())) {
      TreeClass expect = class_of(f.trees[i].edges, s.members);
      if (expect != f.classes[i]) {
        check.ok = false;
        check.message = tree_label(i) + ": class tag does not match edges";
        return check;
      }
    }
  }
  for (int i = 0; i < f.size(); ++i) {
    for (int j = i + 1; j < f.size(); ++j) {
      const SteinerTree& a = f.trees[i];
      const SteinerTree& b = f.trees[j];
      std::size_t ai = 0, bi = 0;
      while (ai < a.edges.size() && bi < b.edges.size()) {
        if (a.edges[ai] == b.edges[bi]) {
          check.ok = false;
          check.message = tree_label(i) + " and " + tree_label(j) + " share edge " +
                          std::to_string(a.edges[ai].u) + "-" + std::to_string(a.edges[ai].v);
          return check;
        }
        if (a.edges[ai] < b.edges[bi])
          ++ai;
        else
          ++bi;
      }
      if (mode == DisjointMode::kInternal) {
        std::uint32_t shared = a.vertex_mask & b.vertex_mask & ~s.members;
        if (shared) {
          check.ok = false;
          check.message = tree_label(i) + " and " + tree_label(j) +
                          " share non-terminal vertex " + std::to_string(lowest_bit(shared));
          return check;
        }
      }
    }
  }
  return check;
}

TreeClassification classify_tree(const SteinerTree& t, const TerminalSet& s, const Graph& g) {
  std::string why;
  if (!tree_is_valid(g, s, t, &why)) throw ParameterError("not a valid S-tree: " + why);

  TreeClassification result;
  result.tree_class = class_of(t.edges, s.members);
  for (const Edge& e : t.edges)
    if (s.contains(e.u) || s.contains(e.v)) ++result.counted_edges;

  if (result.tree_class == TreeClass::kInside && result.counted_edges != s.k - 1)
    throw InternalContradictionError("inside tree with " +
                                     std::to_string(result.counted_edges) + " edges, expected " +
                                     std::to_string(s.k - 1));
  if (result.tree_class == TreeClass::kCrossing && result.counted_edges < s.k)
    throw InternalContradictionError("crossing tree with only " +
                                     std::to_string(result.counted_edges) + " counted edges");
  return result;
}

std::string format_tree_family(const TreeFamily& f) {
  std::ostringstream out;
  for (const SteinerTree& t : f.trees) {
    for (std::size_t i = 0; i < t.edges.size(); ++i) {
      if (i) out << ' ';
      out << t.edges[i].u << '-' << t.edges[i].v;
    }
    out << '\n';
  }
  out << '\n';
  return out.str();
}

}  // namespace gconn
