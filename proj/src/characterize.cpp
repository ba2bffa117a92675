#include "gconn/characterize.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <sstream>
#include <unordered_set>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace gconn {

namespace {

void check_even_k(int n, int k, int k_min) {
  if (k % 2 != 0) throw ParameterError("characterization requires even k, got " + std::to_string(k));
  if (k < k_min || k > n)
    throw ParameterError("characterization requires " + std::to_string(k_min) + " <= k <= n");
}

void check_order(int n, const DeletionSet& m) {
  if (m.n != n) throw ParameterError("deletion set order does not match n");
}

}  // namespace

bool predicate_theorem2(int n, int k, const DeletionSet& m) {
  check_even_k(n, k, 4);
  check_order(n, m);
  return m.max_degree >= 1 && m.max_degree <= k / 2 && m.size() >= 1 && m.size() <= k - 1;
}

bool predicate_theorem3(int n, int k, const DeletionSet& m) {
  check_even_k(n, k, 2);
  check_order(n, m);
  bool matching_side = m.max_degree == 1 && m.size() >= 1 && m.size() <= n / 2;
  bool dense_side =
      m.max_degree >= 2 && m.max_degree <= k / 2 && m.size() >= 1 && m.size() <= k - 1;
  return matching_side || dense_side;
}

bool predicate_lemma4(int n, int k, const DeletionSet& m) {
  if (k < 3 || k > n) throw ParameterError("lemma-4 predicate requires 3 <= k <= n");
  check_order(n, m);
  if (k % 2 == 0) return m.size() == 0;
  return m.size() <= (k - 1) / 2;
}

int degree_upper_bound(int n, const DeletionSet& m) {
  check_order(n, m);
  return n - 1 - m.max_degree;
}

namespace {

// Edge-id bookkeeping over K_n, ids in (u, v)-lexicographic order.
struct EdgeIndex {
  int n = 0;
  std::vector<Edge> edges;  // id -> pair

  explicit EdgeIndex(int n) : n(n) {
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v) edges.push_back(Edge(u, v));
  }
  int count() const { return static_cast<int>(edges.size()); }
};

// Sorted-edge-list lexicographic order for equal-cardinality masks: the
// smaller mask is the one owning the lowest differing edge id.
inline bool mask_lex_less(std::uint32_t a, std::uint32_t b) {
  std::uint32_t d = a ^ b;
  if (!d) return false;
  return (a & (d & ~(d - 1))) != 0;
}

// All vertex permutations of n elements lifted to edge-id maps.
std::vector<std::vector<std::uint8_t>> build_edge_permutations(int n) {
  EdgeIndex idx(n);
  std::vector<int> vmap(idx.n * idx.n, -1);
  for (int id = 0; id < idx.count(); ++id) {
    vmap[idx.edges[id].u * n + idx.edges[id].v] = id;
    vmap[idx.edges[id].v * n + idx.edges[id].u] = id;
  }
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::vector<std::uint8_t>> out;
  do {
    std::vector<std::uint8_t> emap(idx.count());
    for (int id = 0; id < idx.count(); ++id)
      emap[id] = static_cast<std::uint8_t>(
          vmap[perm[idx.edges[id].u] * n + perm[idx.edges[id].v]]);
    out.push_back(std::move(emap));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

const std::vector<std::vector<std::uint8_t>>& edge_permutations(int n) {
  static std::vector<std::vector<std::uint8_t>> cache[9];
  if (cache[n].empty()) cache[n] = build_edge_permutations(n);
  return cache[n];
}

std::uint32_t apply_edge_perm(std::uint32_t mask, const std::vector<std::uint8_t>& emap) {
  std::uint32_t out = 0;
  while (mask) {
    int id = lowest_bit(mask);
    mask &= mask - 1;
    out |= 1u << emap[id];
  }
  return out;
}

std::uint32_t canonical_mask(std::uint32_t mask, int n) {
  const auto& perms = edge_permutations(n);
  std::uint32_t best = apply_edge_perm(mask, perms.front());
  for (std::size_t p = 1; p < perms.size(); ++p) {
    std::uint32_t cand = apply_edge_perm(mask, perms[p]);
    if (mask_lex_less(cand, best)) best = cand;
  }
  return best;
}

DeletionSet mask_to_deletion_set(std::uint32_t mask, const EdgeIndex& idx) {
  std::vector<Edge> edges;
  std::uint32_t rest = mask;
  while (rest) {
    int id = lowest_bit(rest);
    rest &= rest - 1;
    edges.push_back(idx.edges[id]);
  }
  return DeletionSet::make(idx.n, std::move(edges));
}

int mask_max_degree(std::uint32_t mask, const EdgeIndex& idx) {
  std::array<int, Graph::kMaxVertices> deg{};
  std::uint32_t rest = mask;
  while (rest) {
    int id = lowest_bit(rest);
    rest &= rest - 1;
    ++deg[idx.edges[id].u];
    ++deg[idx.edges[id].v];
  }
  return *std::max_element(deg.begin(), deg.begin() + idx.n);
}

}  // namespace

DeletionSet canonical_deletion_set(const DeletionSet& m) {
  if (m.n > 8) throw CapacityError("canonicalization limited to n <= 8");
  EdgeIndex idx(m.n);
  std::uint32_t mask = 0;
  for (const Edge& e : m.edges) {
    int id = 0;
    for (; id < idx.count(); ++id)
      if (idx.edges[id] == e) break;
    mask |= 1u << id;
  }
  return mask_to_deletion_set(canonical_mask(mask, m.n), idx);
}

std::vector<DeletionSet> enumerate_deletion_sets(int n, bool up_to_iso,
                                                 const DeletionSetFilter& filter) {
  if (n < 1 || n > Graph::kMaxVertices) throw ParameterError("enumeration: bad order");
  EdgeIndex idx(n);
  const int total_edges = idx.count();
  const int max_size = std::min(filter.max_size, total_edges);
  std::vector<DeletionSet> out;

  if (up_to_iso) {
    if (n > 8) throw CapacityError("isomorphism-reduced enumeration limited to n <= 8");
    edge_permutations(n);  // warm the table before the parallel loops touch it
    // Breadth-first by |M|: extend each canonical class by one edge and
    // re-canonicalize. Degree pruning is safe because Delta only grows.
    std::vector<std::uint32_t> level = {0u};
    for (int size = 0; size <= max_size; ++size) {
      for (std::uint32_t mask : level) {
        if (size < filter.min_size) continue;
        int delta = mask_max_degree(mask, idx);
        if (delta < filter.min_max_degree || delta > filter.max_max_degree) continue;
        out.push_back(mask_to_deletion_set(mask, idx));
      }
      if (size == max_size) break;
      std::unordered_set<std::uint32_t> next_set;
      std::vector<std::uint32_t> next;
      std::vector<std::uint32_t> candidates;
      for (std::uint32_t mask : level)
        for (int id = 0; id < total_edges; ++id)
          if (!((mask >> id) & 1u)) candidates.push_back(mask | (1u << id));
      std::vector<std::uint32_t> canon(candidates.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 16)
#endif
      for (std::size_t i = 0; i < candidates.size(); ++i) {
        canon[i] = mask_max_degree(candidates[i], idx) > filter.max_max_degree
                       ? 0xffffffffu
                       : canonical_mask(candidates[i], n);
      }
      for (std::uint32_t c : canon) {
        if (c == 0xffffffffu) continue;
        if (next_set.insert(c).second) next.push_back(c);
      }
      std::sort(next.begin(), next.end(), mask_lex_less);
      level = std::move(next);
    }
    return out;
  }

  // Raw labeled enumeration, by size then edge-list order.
  long long estimate = 0;
  for (int size = std::max(filter.min_size, 0); size <= max_size; ++size) {
    long long c = 1;
    for (int i = 0; i < size; ++i) c = c * (total_edges - i) / (i + 1);
    estimate += c;
    if (estimate > 20000000LL)
      throw CapacityError("labeled deletion-set enumeration too large; tighten the filter");
  }
  std::vector<int> pick;
  for (int size = std::max(filter.min_size, 0); size <= max_size; ++size) {
    pick.assign(size, 0);
    std::iota(pick.begin(), pick.end(), 0);
    if (size > total_edges) break;
    while (true) {
      std::uint32_t mask = 0;
      for (int id : pick) mask |= 1u << id;
      int delta = mask_max_degree(mask, idx);
      if (delta >= filter.min_max_degree && delta <= filter.max_max_degree)
        out.push_back(mask_to_deletion_set(mask, idx));
      if (size == 0) break;
      int i = size - 1;
      while (i >= 0 && pick[i] == total_edges - size + i) --i;
      if (i < 0) break;
      ++pick[i];
      for (int j = i + 1; j < size; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
  return out;
}

CharacterizationReport verify_theorem(int n, int k, int which, int threads) {
  if (which != 2 && which != 3) throw ParameterError("theorem must be 2 or 3");
  check_even_k(n, k, which == 2 ? 4 : 2);

  auto start = std::chrono::steady_clock::now();
  CharacterizationReport report;
  report.n = n;
  report.k = k;
  report.theorem = which;
  report.mode = which == 2 ? DisjointMode::kInternal : DisjointMode::kEdge;

  std::vector<DeletionSet> classes = enumerate_deletion_sets(n, true);
  report.classes_checked = static_cast<int>(classes.size());
  report.cases.resize(classes.size());

  const int target = n - k / 2 - 1;
  Graph kn = Graph::complete(n);

  bool parallel = threads > 1;
#ifndef _OPENMP
  parallel = false;
#endif

  auto run_case = [&](std::size_t i) {
    CharacterizationCase c;
    c.m = classes[i];
    c.predicate = which == 2 ? predicate_theorem2(n, k, c.m) : predicate_theorem3(n, k, c.m);
    Graph g = delete_edges(kn, c.m);
    if (!is_connected(g)) {
      c.solver_value = 0;
      c.vacuous = true;
    } else {
      c.solver_value = generalized_connectivity(g, k, report.mode, 1).value;
    }
    c.agree = c.predicate == (c.solver_value == target);
    report.cases[i] = std::move(c);
  };

  if (!parallel) {
    for (std::size_t i = 0; i < classes.size(); ++i) run_case(i);
  } else {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(threads)
#endif
    for (std::size_t i = 0; i < classes.size(); ++i) run_case(i);
  }

  for (const CharacterizationCase& c : report.cases)
    if (!c.agree) report.counterexamples.push_back(c);

  report.wall_time_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                            std::chrono::steady_clock::now() - start)
                            .count();
  return report;
}

std::string format_report(const CharacterizationReport& report) {
  std::ostringstream out;
  out << "theorem " << report.theorem << " sweep: n=" << report.n << " k=" << report.k
      << " mode=" << (report.mode == DisjointMode::kInternal ? "kappa" : "lambda") << '\n';
  out << "classes_checked: " << report.classes_checked << '\n';
  out << "counterexamples: " << report.counterexamples.size() << '\n';
  for (const CharacterizationCase& c : report.counterexamples) {
    out << "  M={";
    for (std::size_t i = 0; i < c.m.edges.size(); ++i) {
      if (i) out << ',';
      out << c.m.edges[i].u << '-' << c.m.edges[i].v;
    }
    out << "} predicate=" << (c.predicate ? "true" : "false")
        << " solver=" << c.solver_value << '\n';
  }
  out << "wall_time_ms: " << report.wall_time_ms << '\n';
  return out.str();
}

}  // namespace gconn
