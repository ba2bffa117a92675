#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>
#include <random>
#include <set>

#include "gconn/spanning_pack.hpp"

using namespace gconn;

namespace {

// A pack result is only accepted after passing this checker: l trees, each
// spanning and acyclic, no edge reused, every edge present in g.
void check_trees(const Graph& g, const PackCertificate& cert) {
  REQUIRE(cert.has_trees());
  REQUIRE(static_cast<int>(cert.trees.size()) == cert.requested);
  std::set<std::pair<int, int>> used;
  for (const std::vector<Edge>& tree : cert.trees) {
    CHECK(static_cast<int>(tree.size()) == g.order() - 1);
    std::uint32_t mask = 0;
    for (const Edge& e : tree) {
      CHECK(g.has_edge(e.u, e.v));
      CHECK(used.insert({e.u, e.v}).second);
      mask |= (1u << e.u) | (1u << e.v);
    }
    if (g.order() > 1) CHECK(mask == g.vertex_mask());
    // Acyclicity via component growth.
    std::uint32_t comp = 1u;
    bool grew = true;
    while (grew) {
      grew = false;
      for (const Edge& e : tree) {
        std::uint32_t have = ((comp >> e.u) & 1u) + ((comp >> e.v) & 1u);
        if (have == 1) {
          comp |= (1u << e.u) | (1u << e.v);
          grew = true;
        }
      }
    }
    CHECK(comp == g.vertex_mask());
  }
}

void check_witness(const Graph& g, int l, const Partition& p) {
  std::uint32_t seen = 0;
  for (std::uint32_t b : p.blocks) {
    CHECK(b != 0);
    CHECK((seen & b) == 0);
    seen |= b;
  }
  CHECK(seen == g.vertex_mask());
  CHECK(p.crossing < l * (p.block_count() - 1));
}

Graph path_graph(int n) {
  Graph g(n);
  for (int v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
  return g;
}

Graph cycle_graph(int n) {
  Graph g = path_graph(n);
  g.add_edge(0, n - 1);
  return g;
}

struct Rng {
  std::mt19937 gen;
  explicit Rng(unsigned seed) : gen(seed) {}
  int below(int n) { return static_cast<int>(gen() % static_cast<unsigned>(n)); }
};

}  // namespace

TEST_CASE("pack K_4 into two spanning trees") {
  PackCertificate cert = pack_spanning(Graph::complete(4), 2);
  check_trees(Graph::complete(4), cert);
}

TEST_CASE("a path admits no two spanning trees") {
  Graph p3 = path_graph(3);
  PackCertificate cert = pack_spanning(p3, 2);
  REQUIRE_FALSE(cert.has_trees());
  check_witness(p3, 2, *cert.witness);

  // The all-singletons partition is violating too (crossing 2 < 2*2).
  Partition singles = Partition::singletons(p3);
  CHECK(singles.crossing == 2);
  CHECK(singles.crossing < 2 * (singles.block_count() - 1));
}

TEST_CASE("violating partition for K_4 at l=3") {
  std::optional<Partition> p = violating_partition(Graph::complete(4), 3);
  REQUIRE(p.has_value());
  check_witness(Graph::complete(4), 3, *p);
  // All 15 partitions of a 4-set include the singleton one, which violates:
  // crossing 6 < 3*3.
  Partition singles = Partition::singletons(Graph::complete(4));
  CHECK(singles.crossing == 6);
  CHECK(singles.crossing < 3 * 3);
}

TEST_CASE("connected graphs always hold one spanning tree") {
  CHECK_FALSE(violating_partition(cycle_graph(5), 1).has_value());
  CHECK_FALSE(violating_partition(Graph::complete(6), 1).has_value());
  check_trees(cycle_graph(5), pack_spanning(cycle_graph(5), 1));
}

TEST_CASE("C_4 at l=2 is violated by the singleton partition") {
  Graph c4 = cycle_graph(4);
  std::optional<Partition> p = violating_partition(c4, 2);
  REQUIRE(p.has_value());
  check_witness(c4, 2, *p);
  Partition singles = Partition::singletons(c4);
  CHECK(singles.crossing == 4);
  CHECK(singles.crossing < 2 * 3);
}

TEST_CASE("disconnected graphs yield the component partition") {
  Graph g(5);
  g.add_edge(0, 1);
  g.add_edge(2, 3);
  g.add_edge(3, 4);
  PackCertificate cert = pack_spanning(g, 1);
  REQUIRE_FALSE(cert.has_trees());
  CHECK(cert.witness->block_count() == 2);
  CHECK(cert.witness->crossing == 0);
}

TEST_CASE("single vertex packs trivially") {
  PackCertificate cert = pack_spanning(Graph(1), 3);
  CHECK(cert.has_trees());
  CHECK(cert.trees.size() == 3);
  CHECK_FALSE(violating_partition(Graph(1), 3).has_value());
}

TEST_CASE("packing numbers") {
  CHECK(spanning_tree_packing_number(Graph::complete(4)) == 2);
  CHECK(spanning_tree_packing_number(path_graph(6)) == 1);

  // K_6 minus a perfect matching: 12 edges, so at most 2 trees; the packer
  // must exhibit both.
  Graph g = Graph::complete(6);
  g.remove_edge(0, 1);
  g.remove_edge(2, 3);
  g.remove_edge(4, 5);
  CHECK(spanning_tree_packing_number(g) == 2);
  check_trees(g, pack_spanning(g, 2));

  Graph split(4);
  split.add_edge(0, 1);
  split.add_edge(2, 3);
  CHECK(spanning_tree_packing_number(split) == 0);
}

TEST_CASE("parameter and capacity errors") {
  CHECK_THROWS_AS(pack_spanning(Graph::complete(4), 0), ParameterError);
  CHECK_THROWS_AS(violating_partition(Graph::complete(4), 0), ParameterError);
  CHECK_THROWS_AS(violating_partition(Graph::complete(13), 1), CapacityError);
}

TEST_CASE("theorem iff on random graphs") {
  Rng rng(99);
  for (int iter = 0; iter < 120; ++iter) {
    int n = 2 + rng.below(6);  // 2..7
    Graph g(n);
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (rng.below(100) < 60) g.add_edge(u, v);
    for (int l = 1; l <= 3; ++l) {
      PackCertificate cert = pack_spanning(g, l);
      std::optional<Partition> vp = violating_partition(g, l);
      CHECK(cert.has_trees() == !vp.has_value());
      if (cert.has_trees())
        check_trees(g, cert);
      else {
        check_witness(g, l, *cert.witness);
        check_witness(g, l, *vp);
      }
    }
  }
}

TEST_CASE("packing number equals the partition-formula minimum") {
  // Independent route: max l = min over nontrivial partitions of
  // floor(crossing / (blocks - 1)), computed by brute force.
  Rng rng(2468);
  for (int iter = 0; iter < 60; ++iter) {
    int n = 2 + rng.below(6);  // 2..7
    Graph g(n);
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (rng.below(100) < 65) g.add_edge(u, v);
    if (!is_connected(g)) continue;

    int formula = 1 << 30;
    std::vector<int> assign(n, 0);
    std::function<void(int, int)> rec = [&](int pos, int blocks) {
      if (pos == n) {
        if (blocks < 2) return;
        std::vector<std::uint32_t> masks(blocks, 0);
        for (int v = 0; v < n; ++v) masks[assign[v]] |= 1u << v;
        Partition p = Partition::of_blocks(g, masks);
        formula = std::min(formula, p.crossing / (blocks - 1));
        return;
      }
      for (int b = 0; b <= blocks && b < n; ++b) {
        assign[pos] = b;
        rec(pos + 1, std::max(blocks, b + 1));
      }
    };
    assign[0] = 0;
    rec(1, 1);
    CHECK(spanning_tree_packing_number(g) == formula);
  }
}

TEST_CASE("serial and parallel partition sweeps agree") {
  Rng rng(5150);
  for (int iter = 0; iter < 40; ++iter) {
    int n = 3 + rng.below(6);  // 3..8
    Graph g(n);
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (rng.below(100) < 55) g.add_edge(u, v);
    for (int l = 1; l <= 3; ++l) {
      std::optional<Partition> serial = violating_partition(g, l, 1);
      std::optional<Partition> parallel = violating_partition(g, l, 4);
      REQUIRE(serial.has_value() == parallel.has_value());
      if (serial) {
        CHECK(serial->blocks == parallel->blocks);
        CHECK(serial->crossing == parallel->crossing);
      }
    }
  }
}
