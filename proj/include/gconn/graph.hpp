#ifndef GCONN_GRAPH_HPP
#define GCONN_GRAPH_HPP

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "gconn/errors.hpp"

namespace gconn {

// An unordered vertex pair, normalized so u < v.
struct Edge {
  int u = 0;
  int v = 0;

  Edge() = default;
  Edge(int a, int b) : u(a < b ? a : b), v(a < b ? b : a) {}

  friend bool operator==(const Edge& a, const Edge& b) { return a.u == b.u && a.v == b.v; }
  friend bool operator!=(const Edge& a, const Edge& b) { return !(a == b); }
  friend bool operator<(const Edge& a, const Edge& b) {
    return a.u != b.u ? a.u < b.u : a.v < b.v;
  }
};

/// Labeled simple undirected graph on vertices 0..n-1, n <= 32. Adjacency is
/// one 32-bit mask per vertex, so neighborhood algebra is single-word. Values
/// are cheap to copy and never mutated after construction by this library's
/// operations; share them across threads freely.
class Graph {
 public:
  static constexpr int kMaxVertices = 32;

  Graph() = default;
  explicit Graph(int n);

  /// K_n. Throws ParameterError unless 1 <= n <= 32.
  static Graph complete(int n);

  int order() const { return n_; }
  int size() const { return m_; }

  bool has_edge(int u, int v) const { return (adj_[u] >> v) & 1u; }
  std::uint32_t neighbors(int v) const { return adj_[v]; }
  int degree(int v) const;
  int min_degree() const;
  int max_degree() const;

  std::uint32_t vertex_mask() const {
    return n_ == 32 ? 0xffffffffu : ((1u << n_) - 1u);
  }

  void add_edge(int u, int v);
  void remove_edge(int u, int v);

  std::vector<Edge> edges() const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.adj_ == b.adj_;
  }

 private:
  int n_ = 0;
  int m_ = 0;
  std::array<std::uint32_t, kMaxVertices> adj_{};

  void check_vertex(int v) const;
};

/// An edge set M of K_n together with the cached maximum degree of the
/// subgraph K_n[M] it induces. Edges are stored sorted and duplicate-free.
struct DeletionSet {
  int n = 0;
  std::vector<Edge> edges;
  int max_degree = 0;  // max multiplicity of any vertex among the edges

  /// Validates (no loops, endpoints < n, no duplicates), sorts, and caches
  /// the maximum degree.
  static DeletionSet make(int n, std::vector<Edge> edges);

  int size() const { return static_cast<int>(edges.size()); }
  bool contains(int u, int v) const;
};

/// A terminal set S of size k inside a graph of order n, with the orderings
/// u_1..u_k of S and w_1..w_{n-k} of the complement that the constructive
/// builders consume. Vertices stay 0-indexed everywhere; the labels are only
/// positions in these two arrays.
struct TerminalSet {
  std::uint32_t members = 0;
  int k = 0;
  std::uint32_t complement = 0;
  std::vector<int> s_order;     // u_1..u_k as s_order[0..k-1]
  std::vector<int> sbar_order;  // w_1..w_{n-k}

  /// Ascending-order default labeling.
  static TerminalSet of(int n, std::uint32_t members);
  static TerminalSet of_vertices(int n, const std::vector<int>& vertices);

  bool contains(int v) const { return (members >> v) & 1u; }
};

Graph make_complete(int n);

/// G \ M. Every edge of m must exist in g (ParameterError otherwise), and
/// m.n must equal g.order().
Graph delete_edges(const Graph& g, const DeletionSet& m);

/// The subgraph induced by S, relabeled to 0..k-1, plus the map from new
/// labels back to original vertices (new label i -> label_map[i]).
struct InducedGraph {
  Graph graph;
  std::vector<int> label_map;
};
InducedGraph induced(const Graph& g, const TerminalSet& s);

bool is_connected(const Graph& g);

/// Connected-component vertex masks, ordered by smallest member.
std::vector<std::uint32_t> connected_components(const Graph& g);

// Text format: header "n m" then one "u v" line per edge with u < v,
// ascending, single spaces, LF endings.
std::string format_graph(const Graph& g);
Graph parse_graph(std::istream& in);
Graph parse_graph_file(const std::string& path);

std::string format_deletion_set(const DeletionSet& m);
DeletionSet parse_deletion_set(std::istream& in);
DeletionSet parse_deletion_set_file(const std::string& path);

// Popcount/iteration helpers used by every solver loop.
int popcount32(std::uint32_t x);
int lowest_bit(std::uint32_t x);

}  // namespace gconn

#endif
