#include "gconn/graph.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <sstream>

namespace gconn {

int popcount32(std::uint32_t x) { return std::popcount(x); }
int lowest_bit(std::uint32_t x) { return std::countr_zero(x); }

Graph::Graph(int n) : n_(n) {
  if (n < 1 || n > kMaxVertices)
    throw ParameterError("graph order must be in [1, 32], got " + std::to_string(n));
}

Graph Graph::complete(int n) {
  Graph g(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
  return g;
}

void Graph::check_vertex(int v) const {
  if (v < 0 || v >= n_)
    throw ParameterError("vertex " + std::to_string(v) + " out of range for order " +
                         std::to_string(n_));
}

int Graph::degree(int v) const {
  check_vertex(v);
  return popcount32(adj_[v]);
}

int Graph::min_degree() const {
  int d = n_;
  for (int v = 0; v < n_; ++v) d = std::min(d, popcount32(adj_[v]));
  return d;
}

int Graph::max_degree() const {
  int d = 0;
  for (int v = 0; v < n_; ++v) d = std::max(d, popcount32(adj_[v]));
  return d;
}

void Graph::add_edge(int u, int v) {
  check_vertex(u);
  check_vertex(v);
  if (u == v) throw ParameterError("loop at vertex " + std::to_string(u));
  if (has_edge(u, v)) throw ParameterError("duplicate edge " + std::to_string(u) + " " + std::to_string(v));
  adj_[u] |= 1u << v;
  adj_[v] |= 1u << u;
  ++m_;
}

void Graph::remove_edge(int u, int v) {
  check_vertex(u);
  check_vertex(v);
  if (!has_edge(u, v))
    throw ParameterError("edge " + std::to_string(u) + " " + std::to_string(v) + " not present");
  adj_[u] &= ~(1u << v);
  adj_[v] &= ~(1u << u);
  --m_;
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(m_);
  for (int u = 0; u < n_; ++u) {
    std::uint32_t higher = adj_[u] >> (u + 1) << (u + 1);
    while (higher) {
      int v = lowest_bit(higher);
      higher &= higher - 1;
      out.push_back(Edge(u, v));
    }
  }
  return out;
}

DeletionSet DeletionSet::make(int n, std::vector<Edge> edges) {
  if (n < 1 || n > Graph::kMaxVertices)
    throw ParameterError("deletion set order must be in [1, 32], got " + std::to_string(n));
  std::sort(edges.begin(), edges.end());
  std::array<int, Graph::kMaxVertices> deg{};
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const Edge& e = edges[i];
    if (e.u == e.v) throw ParameterError("deletion set contains a loop");
    if (e.u < 0 || e.v >= n)
      throw ParameterError("deletion edge endpoint out of range for order " + std::to_string(n));
    if (i > 0 && edges[i - 1] == e) throw ParameterError("duplicate edge in deletion set");
    ++deg[e.u];
    ++deg[e.v];
  }
  DeletionSet m;
  m.n = n;
  m.edges = std::move(edges);
  m.max_degree = *std::max_element(deg.begin(), deg.end());
  return m;
}

bool DeletionSet::contains(int u, int v) const {
  return std::binary_search(edges.begin(), edges.end(), Edge(u, v));
}

TerminalSet TerminalSet::of(int n, std::uint32_t members) {
  if (n < 1 || n > Graph::kMaxVertices) throw ParameterError("terminal set: bad order");
  std::uint32_t all = n == 32 ? 0xffffffffu : ((1u << n) - 1u);
  if (members & ~all) throw ParameterError("terminal set has vertices >= n");
  TerminalSet s;
  s.members = members;
  s.k = popcount32(members);
  s.complement = all & ~members;
  for (int v = 0; v < n; ++v) {
    if (s.contains(v))
      s.s_order.push_back(v);
    else
      s.sbar_order.push_back(v);
  }
  return s;
}

TerminalSet TerminalSet::of_vertices(int n, const std::vector<int>& vertices) {
  std::uint32_t mask = 0;
  for (int v : vertices) {
    if (v < 0 || v >= n) throw ParameterError("terminal vertex out of range");
    if ((mask >> v) & 1u) throw ParameterError("duplicate terminal vertex");
    mask |= 1u << v;
  }
  TerminalSet s = of(n, mask);
  s.s_order = vertices;  // the caller's listing is the labeling u_1..u_k
  return s;
}

Graph make_complete(int n) { return Graph::complete(n); }

Graph delete_edges(const Graph& g, const DeletionSet& m) {
  if (m.n != g.order())
    throw ParameterError("deletion set order " + std::to_string(m.n) +
                         " does not match graph order " + std::to_string(g.order()));
  Graph out = g;
  for (const Edge& e : m.edges) {
    if (!out.has_edge(e.u, e.v))
      throw ParameterError("deletion edge " + std::to_string(e.u) + " " + std::to_string(e.v) +
                           " absent from graph");
    out.remove_edge(e.u, e.v);
  }
  return out;
}

InducedGraph induced(const Graph& g, const TerminalSet& s) {
  if (s.members & ~g.vertex_mask()) throw ParameterError("terminal set not within graph");
  InducedGraph out;
  out.label_map = s.s_order;
  out.graph = Graph(s.k);
  for (int i = 0; i < s.k; ++i)
    for (int j = i + 1; j < s.k; ++j)
      if (g.has_edge(out.label_map[i], out.label_map[j])) out.graph.add_edge(i, j);
  return out;
}

std::vector<std::uint32_t> connected_components(const Graph& g) {
  std::vector<std::uint32_t> comps;
  std::uint32_t unseen = g.vertex_mask();
  while (unseen) {
    int start = lowest_bit(unseen);
    std::uint32_t comp = 1u << start;
    std::uint32_t frontier = comp;
    while (frontier) {
      std::uint32_t next = 0;
      while (frontier) {
        int v = lowest_bit(frontier);
        frontier &= frontier - 1;
        next |= g.neighbors(v) & ~comp;
      }
      comp |= next;
      frontier = next;
    }
    comps.push_back(comp);
    unseen &= ~comp;
  }
  return comps;
}

bool is_connected(const Graph& g) {
  if (g.order() == 0) return false;
  return connected_components(g).size() == 1;
}

std::string format_graph(const Graph& g) {
  std::ostringstream out;
  out << g.order() << ' ' << g.size() << '\n';
  for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << '\n';
  return out.str();
}

namespace {

// Shared scanner for the "n m" + pair-per-line format.
struct PairFile {
  int n = 0;
  std::vector<Edge> pairs;
};

PairFile parse_pair_file(std::istream& in, bool require_u_less_v) {
  PairFile out;
  std::string line;
  int lineno = 0;
  if (!std::getline(in, line)) throw ParseError("missing header", 1);
  ++lineno;
  std::istringstream header(line);
  long long n = 0, m = 0;
  if (!(header >> n >> m)) throw ParseError("header must be 'n m'", lineno);
  std::string trailing;
  if (header >> trailing) throw ParseError("trailing tokens after header", lineno);
  if (n < 1 || n > Graph::kMaxVertices) throw ParseError("order out of range [1, 32]", lineno);
  if (m < 0) throw ParseError("negative edge count", lineno);
  out.n = static_cast<int>(n);
  for (long long i = 0; i < m; ++i) {
    if (!std::getline(in, line)) throw ParseError("expected " + std::to_string(m) + " edges", lineno + 1);
    ++lineno;
    std::istringstream row(line);
    long long u = 0, v = 0;
    if (!(row >> u >> v)) throw ParseError("edge line must be 'u v'", lineno);
    if (row >> trailing) throw ParseError("trailing tokens after edge", lineno);
    if (u < 0 || v < 0 || u >= n || v >= n) throw ParseError("edge endpoint out of range", lineno);
    if (u == v) throw ParseError("loop edge", lineno);
    if (require_u_less_v && u > v) throw ParseError("edges must satisfy u < v", lineno);
    out.pairs.push_back(Edge(static_cast<int>(u), static_cast<int>(v)));
  }
  return out;
}

}  // namespace

Graph parse_graph(std::istream& in) {
  PairFile file = parse_pair_file(in, true);
  Graph g(file.n);
  int lineno = 1;
  for (const Edge& e : file.pairs) {
    ++lineno;
    if (g.has_edge(e.u, e.v)) throw ParseError("duplicate edge", lineno);
    g.add_edge(e.u, e.v);
  }
  return g;
}

Graph parse_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot open graph file: " + path);
  return parse_graph(in);
}

std::string format_deletion_set(const DeletionSet& m) {
  std::ostringstream out;
  out << m.n << ' ' << m.size() << '\n';
  for (const Edge& e : m.edges) out << e.u << ' ' << e.v << '\n';
  return out.str();
}

DeletionSet parse_deletion_set(std::istream& in) {
  PairFile file = parse_pair_file(in, false);
  try {
    return DeletionSet::make(file.n, std::move(file.pairs));
  } catch (const ParameterError& e) {
    throw ParseError(e.what(), 1);
  }
}

DeletionSet parse_deletion_set_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot open deletion-set file: " + path);
  return parse_deletion_set(in);
}

}  // namespace gconn
