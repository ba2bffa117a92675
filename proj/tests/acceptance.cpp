// Acceptance suite: every release-gating property, one pass/fail line each.
// Exits nonzero if any criterion fails. Budgets are wall-clock ceilings; the
// checks themselves are exact.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "gconn/characterize.hpp"
#include "gconn/construct.hpp"
#include "gconn/spanning_pack.hpp"
#include "gconn/steiner.hpp"

using namespace gconn;
using Clock = std::chrono::steady_clock;

namespace {

struct Criterion {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    pass = false;
    if (!detail.empty()) detail += "; ";
    detail += why;
  }
  void note(const std::string& text) {
    if (pass && detail.empty()) detail = text;
  }
};

struct Rng {
  std::mt19937 gen;
  explicit Rng(unsigned seed) : gen(seed) {}
  int below(int n) { return static_cast<int>(gen() % static_cast<unsigned>(n)); }
};

Graph random_graph(int n, Rng& rng, int edge_percent) {
  Graph g(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (rng.below(100) < edge_percent) g.add_edge(u, v);
  return g;
}

// 1. Complete graphs: kappa_k(K_n) = lambda_k(K_n) = n - ceil(k/2) for all
//    2 <= k <= n <= 8.
Criterion criterion_complete_formula() {
  Criterion c;
  int cases = 0;
  for (int n = 2; n <= 8; ++n) {
    Graph kn = Graph::complete(n);
    for (int k = 2; k <= n; ++k) {
      int expected = n - (k + 1) / 2;
      for (DisjointMode mode : {DisjointMode::kInternal, DisjointMode::kEdge}) {
        GlobalResult r = generalized_connectivity(kn, k, mode, 2);
        ++cases;
        if (r.value != expected)
          c.fail("K_" + std::to_string(n) + " k=" + std::to_string(k) + " gave " +
                 std::to_string(r.value) + ", expected " + std::to_string(expected));
      }
    }
  }
  c.note(std::to_string(cases) + " (n,k,mode) cases");
  return c;
}

// 2. Packing theorem as an executable iff: over every connected graph on
//    n <= 6 vertices up to isomorphism and l in {1,2,3}, the matroid-union
//    packer succeeds exactly when the exhaustive partition sweep finds no
//    violating partition.
Criterion criterion_packing_iff() {
  Criterion c;
  int graphs = 0, connected6 = 0;
  for (int n = 1; n <= 6; ++n) {
    Graph kn = Graph::complete(n);
    for (const DeletionSet& m : enumerate_deletion_sets(n, true)) {
      Graph g = delete_edges(kn, m);
      if (!is_connected(g)) continue;
      ++graphs;
      connected6 += (n == 6);
      for (int l = 1; l <= 3; ++l) {
        PackCertificate cert = pack_spanning(g, l);
        bool violated = violating_partition(g, l).has_value();
        if (cert.has_trees() == violated) {
          c.fail("iff broken at n=" + std::to_string(n) + " l=" + std::to_string(l));
          continue;
        }
        if (!cert.has_trees()) {
          const Partition& p = *cert.witness;
          if (p.crossing >= l * (p.block_count() - 1)) c.fail("witness not violating");
        }
      }
    }
  }
  if (connected6 != 112)
    c.fail("expected 112 connected 6-vertex classes, saw " + std::to_string(connected6));
  c.note(std::to_string(graphs) + " connected graphs x 3 targets");
  return c;
}

// 3-4. Exhaustive characterization sweeps at (6,4) and (7,4).
Criterion criterion_theorem_sweep(int which) {
  Criterion c;
  long long classes = 0;
  for (int n : {6, 7}) {
    CharacterizationReport report = verify_theorem(n, 4, which, 2);
    classes += report.classes_checked;
    if (!report.all_agree())
      c.fail("n=" + std::to_string(n) + ": " + std::to_string(report.counterexamples.size()) +
             " counterexamples");
  }
  c.note(std::to_string(classes) + " deletion classes");
  return c;
}

// 5. The worked example: exact greedy picks, the two displayed trees, and a
//    clean internally disjoint family of n-5 trees.
Criterion criterion_appendix_fixture() {
  Criterion c;
  DeletionSet m = DeletionSet::make(
      12, {Edge(8, 0), Edge(8, 1), Edge(8, 2), Edge(9, 1), Edge(9, 3), Edge(4, 5), Edge(5, 7)});
  TerminalSet s = TerminalSet::of(12, 0xffu);
  GreedyTrace trace;
  TreeFamily fam = construct_lemma11(12, 8, m, s, &trace);

  if (fam.size() != 7) c.fail("family size " + std::to_string(fam.size()) + " != 7");
  FamilyCheck check =
      verify_family(delete_edges(Graph::complete(12), m), s, fam, DisjointMode::kInternal);
  if (!check.ok) c.fail("verifier: " + check.message);

  auto expect_picks = [&c](const GreedyStage& st, std::vector<Edge> want, const char* name) {
    if (st.picked != want) c.fail(std::string(name) + " picks differ");
  };
  if (trace.stages.size() != 4) {
    c.fail("expected 4 stages");
    return c;
  }
  expect_picks(trace.stages[0], {Edge(0, 3), Edge(1, 6), Edge(2, 3)}, "stage 1");
  expect_picks(trace.stages[1], {Edge(0, 1), Edge(3, 4)}, "stage 2");

  auto has_tree = [&fam](std::vector<Edge> edges) {
    SteinerTree t = SteinerTree::of_edges(std::move(edges));
    for (const SteinerTree& u : fam.trees)
      if (u.edges == t.edges) return true;
    return false;
  };
  if (!has_tree({Edge(8, 3), Edge(8, 4), Edge(8, 5), Edge(8, 6), Edge(8, 7), Edge(0, 3),
                 Edge(1, 6), Edge(2, 3)}))
    c.fail("displayed T_1 missing");
  if (!has_tree({Edge(9, 0), Edge(9, 2), Edge(9, 4), Edge(9, 5), Edge(9, 6), Edge(9, 7),
                 Edge(0, 1), Edge(3, 4)}))
    c.fail("displayed T_2 missing");
  c.note("5 picks + T_1 + T_2 exact, 7 trees verifier-clean");
  return c;
}

// 6. Guaranteed spanning packings: every admissible M at n in {4,6}; 500
//    seeded random admissible M at n in {8,10}. No contradictions allowed.
Criterion criterion_lemma9_property() {
  Criterion c;
  long long built = 0;
  for (int n : {4, 6}) {
    DeletionSetFilter f;
    f.min_size = 1;
    f.max_size = n - 1;
    f.max_max_degree = n / 2;
    TerminalSet all = TerminalSet::of(n, (1u << n) - 1u);
    for (const DeletionSet& m : enumerate_deletion_sets(n, false, f)) {
      try {
        TreeFamily fam = construct_lemma9(n, m);
        FamilyCheck check =
            verify_family(delete_edges(Graph::complete(n), m), all, fam, DisjointMode::kEdge);
        if (fam.size() != (n - 2) / 2 || !check.ok) c.fail("bad family at n=" + std::to_string(n));
        ++built;
      } catch (const InternalContradictionError& e) {
        c.fail(std::string("contradiction: ") + e.what());
      }
    }
  }
  for (int n : {8, 10}) {
    Rng rng(1000u + static_cast<unsigned>(n));
    TerminalSet all = TerminalSet::of(n, n == 32 ? 0xffffffffu : (1u << n) - 1u);
    int done = 0;
    while (done < 500) {
      int size = 1 + rng.below(n - 1);
      std::vector<Edge> edges;
      while (static_cast<int>(edges.size()) < size) {
        Edge e(rng.below(n), rng.below(n));
        if (e.u == e.v) continue;
        bool dup = false;
        for (const Edge& o : edges) dup |= o == e;
        if (!dup) edges.push_back(e);
      }
      DeletionSet m = DeletionSet::make(n, edges);
      if (m.max_degree > n / 2) continue;
      ++done;
      try {
        TreeFamily fam = construct_lemma9(n, m);
        FamilyCheck check =
            verify_family(delete_edges(Graph::complete(n), m), all, fam, DisjointMode::kEdge);
        if (fam.size() != (n - 2) / 2 || !check.ok) c.fail("bad family at n=" + std::to_string(n));
        ++built;
      } catch (const InternalContradictionError& e) {
        c.fail(std::string("contradiction: ") + e.what());
      }
    }
  }
  c.note(std::to_string(built) + " packings built and checked");
  return c;
}

// 7. Flow oracle: on 200 seeded random connected graphs with n <= 9, the
//    packing solvers agree with unit-capacity max-flow on every vertex pair
//    in both modes.
Criterion criterion_menger() {
  Criterion c;
  Rng rng(7777);
  long long pairs = 0;
  int graphs = 0;
  while (graphs < 200) {
    int n = 2 + rng.below(8);  // 2..9
    Graph g = random_graph(n, rng, 25 + rng.below(70));
    if (!is_connected(g)) continue;
    ++graphs;
    for (int u = 0; u < n; ++u) {
      for (int v = u + 1; v < n; ++v) {
        TerminalSet s = TerminalSet::of(n, (1u << u) | (1u << v));
        ++pairs;
        if (lambda_local(g, s).count != menger_check(g, u, v, DisjointMode::kEdge))
          c.fail("edge-mode disagreement at n=" + std::to_string(n));
        if (kappa_local(g, s).count != menger_check(g, u, v, DisjointMode::kInternal))
          c.fail("internal-mode disagreement at n=" + std::to_string(n));
      }
    }
  }
  c.note(std::to_string(pairs) + " pairs x 2 modes");
  return c;
}

// 8. Conventions and monotonicity over 500 seeded random (G, k) at n <= 8:
//    0/1 conventions, kappa <= lambda <= min degree, spanning-subgraph
//    monotonicity of lambda_k, and the n - ceil(k/2) ceiling.
Criterion criterion_bounds_fuzz() {
  Criterion c;
  Rng rng(31415);
  int instances = 0;
  while (instances < 500) {
    int n = 2 + rng.below(7);  // 2..8
    Graph g = random_graph(n, rng, 20 + rng.below(75));
    int k = 2 + rng.below(n + 1);  // may exceed n to exercise the convention
    ++instances;

    GlobalResult lam = generalized_connectivity(g, k, DisjointMode::kEdge, 2);
    GlobalResult kap = generalized_connectivity(g, k, DisjointMode::kInternal, 2);

    if (!is_connected(g)) {
      if (lam.value != 0 || kap.value != 0) c.fail("disconnected convention broken");
      continue;
    }
    if (n < k) {
      if (lam.value != 1 || kap.value != 1) c.fail("n < k convention broken");
      continue;
    }
    if (kap.value > lam.value) c.fail("kappa > lambda");
    if (lam.value > g.min_degree()) c.fail("lambda above min degree");
    if (k >= 3 && kap.value < 1) c.fail("kappa below 1 on connected input");
    if (lam.value > n - (k + 1) / 2) c.fail("lambda above n - ceil(k/2)");

    Graph h = g;
    for (const Edge& e : g.edges())
      if (rng.below(100) < 20) h.remove_edge(e.u, e.v);
    if (generalized_connectivity(h, k, DisjointMode::kEdge, 2).value > lam.value)
      c.fail("spanning-subgraph monotonicity broken");
  }
  c.note("500 instances");
  return c;
}

// 9. The kappa/lambda separation at n = 8, k = 4 with a perfect matching:
//    lambda_4 = 5 while kappa_4 < 5.
Criterion criterion_separation() {
  Criterion c;
  DeletionSet m = DeletionSet::make(8, {Edge(0, 1), Edge(2, 3), Edge(4, 5), Edge(6, 7)});
  Graph g = delete_edges(Graph::complete(8), m);
  int lam = generalized_connectivity(g, 4, DisjointMode::kEdge, 2).value;
  int kap = generalized_connectivity(g, 4, DisjointMode::kInternal, 2).value;
  if (lam != 5) c.fail("lambda_4 = " + std::to_string(lam) + ", expected 5");
  if (kap >= 5) c.fail("kappa_4 = " + std::to_string(kap) + ", expected < 5");
  c.note("lambda_4 = " + std::to_string(lam) + ", kappa_4 = " + std::to_string(kap));
  return c;
}

}  // namespace

int main() {
  struct Entry {
    const char* name;
    double budget_s;
    std::function<Criterion()> run;
  };
  const std::vector<Entry> entries = {
      {"1 complete-graph formula", 300, criterion_complete_formula},
      {"2 packing-theorem iff", 120, criterion_packing_iff},
      {"3 theorem-2 sweep (6,4) (7,4)", 1200, [] { return criterion_theorem_sweep(2); }},
      {"4 theorem-3 sweep (6,4) (7,4)", 1200, [] { return criterion_theorem_sweep(3); }},
      {"5 appendix golden fixture", 1, criterion_appendix_fixture},
      {"6 spanning-packing property", 120, criterion_lemma9_property},
      {"7 menger cross-check", 300, criterion_menger},
      {"8 bounds/monotonicity fuzz", 600, criterion_bounds_fuzz},
      {"9 separation witness", 60, criterion_separation},
  };

  bool all_pass = true;
  for (const Entry& entry : entries) {
    Clock::time_point t0 = Clock::now();
    Criterion c;
    try {
      c = entry.run();
    } catch (const std::exception& e) {
      c.fail(std::string("exception: ") + e.what());
    }
    double seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    if (seconds > entry.budget_s)
      c.fail("exceeded " + std::to_string(entry.budget_s) + "s budget");
    std::printf("criterion %-30s %s (%.1fs%s%s)\n", entry.name, c.pass ? "PASS" : "FAIL", seconds,
                c.detail.empty() ? "" : ", ", c.detail.c_str());
    all_pass &= c.pass;
  }
  return all_pass ? 0 : 1;
}
