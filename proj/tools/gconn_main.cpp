// gconn: exact generalized-connectivity toolkit for small graphs.
//
// Subcommands: compute, local, pack, construct, verify-theorem, oracle-check.
// Exit codes: 0 success, 1 mathematical disagreement (counterexample or
// internal contradiction), 2 usage error, 3 capacity error.

#include <CLI11.hpp>

#include <iostream>
#include <random>
#include <sstream>

#include "gconn/characterize.hpp"
#include "gconn/construct.hpp"
#include "gconn/json_io.hpp"
#include "gconn/spanning_pack.hpp"
#include "gconn/steiner.hpp"

using namespace gconn;

namespace {

struct GraphSource {
  std::string graph_file;
  int complete_n = 0;
  std::string delete_file;
};

void add_graph_source(CLI::App* cmd, GraphSource& src) {
  auto* graph = cmd->add_option("--graph", src.graph_file, "graph file (header 'n m', then edges)");
  auto* complete = cmd->add_option("--complete", src.complete_n, "start from the complete graph K_n");
  cmd->add_option("--delete", src.delete_file, "deletion-set file applied to --complete")
      ->needs(complete);
  graph->excludes(complete);
  complete->excludes(graph);
}

Graph load_graph(const GraphSource& src) {
  if (!src.graph_file.empty()) return parse_graph_file(src.graph_file);
  if (src.complete_n > 0) {
    Graph g = Graph::complete(src.complete_n);
    if (!src.delete_file.empty()) g = delete_edges(g, parse_deletion_set_file(src.delete_file));
    return g;
  }
  throw ParameterError("no graph source: pass --graph FILE or --complete N [--delete FILE]");
}

DeletionSet load_deletions(const GraphSource& src) {
  if (src.delete_file.empty()) return DeletionSet::make(src.complete_n, {});
  return parse_deletion_set_file(src.delete_file);
}

std::vector<int> parse_vertex_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream in(text);
  std::string token;
  while (std::getline(in, token, ',')) {
    if (token.empty()) continue;
    out.push_back(std::stoi(token));
  }
  return out;
}

std::string vertices_line(std::uint32_t mask) {
  std::ostringstream out;
  bool first = true;
  for (int v : mask_to_vertices(mask)) {
    if (!first) out << ' ';
    out << v;
    first = false;
  }
  return out.str();
}

void print_family_text(std::ostream& out, const TreeFamily& f) {
  out << "family (" << (f.mode == DisjointMode::kInternal ? "internally disjoint" : "edge-disjoint")
      << ", " << f.size() << " trees):\n";
  out << format_tree_family(f);
}

std::string mode_word(DisjointMode mode) {
  return mode == DisjointMode::kInternal ? "kappa" : "lambda";
}

int run_compute(const GraphSource& src, int k, DisjointMode mode, const std::string& format,
                int threads) {
  Graph g = load_graph(src);
  GlobalResult r = generalized_connectivity(g, k, mode, threads);
  if (format == "json") {
    nlohmann::json j{{"k", k}, {"mode", mode_word(mode)}, {"value", r.value}};
    if (r.witness) {
      j["witness"] = mask_to_vertices(r.witness->members);
      j["family"] = r.family;
    }
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << mode_word(mode) << "_" << k << " = " << r.value << '\n';
    if (r.witness) {
      std::cout << "witness S: " << vertices_line(r.witness->members) << '\n';
      print_family_text(std::cout, r.family);
    }
  }
  return 0;
}

int run_local(const GraphSource& src, const std::string& s_list, DisjointMode mode,
              const std::string& format) {
  Graph g = load_graph(src);
  TerminalSet s = TerminalSet::of_vertices(g.order(), parse_vertex_list(s_list));
  LocalResult r = steiner_pack(g, s, mode);
  if (format == "json") {
    nlohmann::json j{{"mode", mode_word(mode)},
                     {"s", mask_to_vertices(s.members)},
                     {"value", r.count},
                     {"family", r.family}};
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << mode_word(mode) << "(S) = " << r.count << '\n';
    print_family_text(std::cout, r.family);
  }
  return 0;
}

int run_pack(const GraphSource& src, int count, const std::string& format) {
  Graph g = load_graph(src);
  PackCertificate cert = pack_spanning(g, count);
  if (format == "json") {
    std::cout << nlohmann::json(cert).dump(2) << '\n';
  } else if (cert.has_trees()) {
    std::cout << "packed " << count << " edge-disjoint spanning trees:\n";
    for (const std::vector<Edge>& tree : cert.trees) {
      for (std::size_t i = 0; i < tree.size(); ++i)
        std::cout << (i ? " " : "") << tree[i].u << '-' << tree[i].v;
      std::cout << '\n';
    }
  } else {
    const Partition& p = *cert.witness;
    std::cout << "no " << count << " spanning trees; violating partition (" << p.block_count()
              << " blocks, crossing " << p.crossing << " < " << count * (p.block_count() - 1)
              << "):\n";
    for (std::uint32_t b : p.blocks) std::cout << "  " << vertices_line(b) << '\n';
  }
  return 0;
}

int run_construct(const GraphSource& src, const std::string& which, int k,
                  const std::string& s_list, const std::string& format) {
  if (src.complete_n <= 0)
    throw ParameterError("construct needs --complete N --delete FILE (builders act on K_n \\ M)");
  const int n = src.complete_n;
  DeletionSet m = load_deletions(src);
  Graph g = delete_edges(Graph::complete(n), m);

  TreeFamily fam;
  TerminalSet s = TerminalSet::of(n, g.vertex_mask());
  if (which == "lemma9") {
    fam = construct_lemma9(n, m);
  } else {
    std::vector<int> vertices;
    if (s_list.empty()) {
      for (int v = 0; v < k; ++v) vertices.push_back(v);
    } else {
      vertices = parse_vertex_list(s_list);
    }
    s = TerminalSet::of_vertices(n, vertices);
    if (which == "lemma10k")
      fam = construct_lemma10_kappa(n, k, m, s);
    else if (which == "lemma10l")
      fam = construct_lemma10_lambda(n, k, m, s);
    else if (which == "lemma11")
      fam = construct_lemma11(n, k, m, s);
    else
      throw ParameterError("unknown builder: " + which);
  }

  FamilyCheck check = verify_family(g, s, fam, fam.mode);
  if (!check.ok)
    throw InternalContradictionError("builder family failed verification: " + check.message);

  if (format == "json") {
    nlohmann::json j{{"builder", which}, {"family", fam}, {"verified", true}};
    std::cout << j.dump(2) << '\n';
  } else {
    print_family_text(std::cout, fam);
    std::cout << "verifier: clean\n";
  }
  return 0;
}

int run_verify_theorem(int n, int k, int theorem, const std::string& format, int threads) {
  CharacterizationReport report = verify_theorem(n, k, theorem, threads);
  if (format == "json") {
    nlohmann::json j(report);
    j.erase("wall_time_ms");  // stdout stays byte-identical across runs
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << "theorem " << theorem << " sweep: n=" << n << " k=" << k << " mode="
              << mode_word(report.mode) << '\n';
    std::cout << "classes_checked: " << report.classes_checked << '\n';
    std::cout << "counterexamples: " << report.counterexamples.size() << '\n';
    for (const CharacterizationCase& c : report.counterexamples) {
      std::cout << "  M=" << nlohmann::json(c.m.edges).dump() << " predicate="
                << (c.predicate ? "true" : "false") << " solver=" << c.solver_value << '\n';
    }
  }
  std::cerr << "wall_time_ms: " << report.wall_time_ms << '\n';
  return report.all_agree() ? 0 : 1;
}

// Cross-validates the independent oracles on seeded random graphs:
// flow-based Menger against the packing solvers on every pair, the
// spanning-packing number against lambda(V), and the packer against the
// exhaustive partition sweep.
int run_oracle_check(unsigned seed, int graphs, int max_n, const std::string& format) {
  std::mt19937 gen(seed);
  auto below = [&gen](int n) { return static_cast<int>(gen() % static_cast<unsigned>(n)); };

  long long comparisons = 0;
  std::vector<std::string> disagreements;

  for (int i = 0; i < graphs; ++i) {
    int n = 2 + below(std::max(1, max_n - 1));
    Graph g(n);
    int percent = 30 + below(65);
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (below(100) < percent) g.add_edge(u, v);
    if (!is_connected(g)) continue;

    for (int u = 0; u < n; ++u) {
      for (int v = u + 1; v < n; ++v) {
        TerminalSet s = TerminalSet::of(n, (1u << u) | (1u << v));
        int lam = lambda_local(g, s).count;
        int kap = kappa_local(g, s).count;
        int lam_flow = menger_check(g, u, v, DisjointMode::kEdge);
        int kap_flow = menger_check(g, u, v, DisjointMode::kInternal);
        comparisons += 2;
        if (lam != lam_flow)
          disagreements.push_back("lambda({" + std::to_string(u) + "," + std::to_string(v) +
                                  "}) packing " + std::to_string(lam) + " vs flow " +
                                  std::to_string(lam_flow) + " on " + format_graph(g));
        if (kap != kap_flow)
          disagreements.push_back("kappa({" + std::to_string(u) + "," + std::to_string(v) +
                                  "}) packing " + std::to_string(kap) + " vs flow " +
                                  std::to_string(kap_flow) + " on " + format_graph(g));
      }
    }

    TerminalSet all = TerminalSet::of(n, g.vertex_mask());
    if (n >= 2) {
      int lam_all = lambda_local(g, all).count;
      int stp = spanning_tree_packing_number(g);
      ++comparisons;
      if (lam_all != stp)
        disagreements.push_back("lambda(V) " + std::to_string(lam_all) + " vs packing number " +
                                std::to_string(stp) + " on " + format_graph(g));
    }

    for (int l = 1; l <= 3; ++l) {
      bool packed = pack_spanning(g, l).has_trees();
      bool violated = violating_partition(g, l).has_value();
      ++comparisons;
      if (packed == violated)
        disagreements.push_back("packing-theorem iff failed at l=" + std::to_string(l) + " on " +
                                format_graph(g));
    }
  }

  if (format == "json") {
    nlohmann::json j{{"seed", seed},
                     {"graphs", graphs},
                     {"comparisons", comparisons},
                     {"disagreements", disagreements}};
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << "oracle-check: seed " << seed << ", " << graphs << " graphs, " << comparisons
              << " comparisons, " << disagreements.size() << " disagreements\n";
    for (const std::string& d : disagreements) std::cout << "  " << d << '\n';
  }
  return disagreements.empty() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact generalized k-connectivity toolkit"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand

  std::string format = "text";
  int threads = 1;
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--threads", threads, "worker threads for sweeps")->check(CLI::PositiveNumber);

  GraphSource src;
  int k = 0;
  std::string mode_name = "kappa";
  std::string s_list;
  int count = 1;
  std::string which;
  int n = 0;
  int theorem = 2;
  unsigned seed = 0;
  int graphs = 50;
  int max_n = 9;

  CLI::App* compute = app.add_subcommand("compute", "kappa_k / lambda_k with witness");
  add_graph_source(compute, src);
  compute->add_option("--k", k, "terminal count")->required();
  compute->add_option("--mode", mode_name, "kappa or lambda")
      ->check(CLI::IsMember({"kappa", "lambda"}));

  CLI::App* local = app.add_subcommand("local", "kappa(S) / lambda(S) for explicit S");
  add_graph_source(local, src);
  local->add_option("--s", s_list, "comma-separated terminal vertices")->required();
  local->add_option("--mode", mode_name, "kappa or lambda")
      ->check(CLI::IsMember({"kappa", "lambda"}));

  CLI::App* pack = app.add_subcommand("pack", "edge-disjoint spanning tree packing");
  add_graph_source(pack, src);
  pack->add_option("--count", count, "number of trees")->required();

  CLI::App* construct = app.add_subcommand("construct", "run a guaranteed tree-family builder");
  add_graph_source(construct, src);
  construct->add_option("--which", which, "lemma9 | lemma10k | lemma10l | lemma11")->required();
  construct->add_option("--k", k, "terminal count (builders other than lemma9)");
  construct->add_option("--s", s_list, "terminal vertices (default 0..k-1)");

  CLI::App* verify = app.add_subcommand("verify-theorem", "exhaustive characterization sweep");
  verify->add_option("--n", n, "graph order")->required();
  verify->add_option("--k", k, "terminal count")->required();
  verify->add_option("--theorem", theorem, "2 (kappa) or 3 (lambda)")->required();

  CLI::App* oracle = app.add_subcommand("oracle-check", "cross-validate the independent oracles");
  oracle->add_option("--seed", seed, "random seed");
  oracle->add_option("--graphs", graphs, "number of random graphs");
  oracle->add_option("--max-n", max_n, "largest graph order")->check(CLI::Range(2, 9));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;  // flag/usage problems are exit 2; --help stays 0
  }

  DisjointMode mode = mode_name == "kappa" ? DisjointMode::kInternal : DisjointMode::kEdge;

  try {
    if (compute->parsed()) return run_compute(src, k, mode, format, threads);
    if (local->parsed()) return run_local(src, s_list, mode, format);
    if (pack->parsed()) return run_pack(src, count, format);
    if (construct->parsed()) return run_construct(src, which, k, s_list, format);
    if (verify->parsed()) return run_verify_theorem(n, k, theorem, format, threads);
    if (oracle->parsed()) return run_oracle_check(seed, graphs, max_n, format);
  } catch (const InternalContradictionError& e) {
    std::cerr << "internal contradiction: " << e.what() << '\n';
    return 1;
  } catch (const CapacityError& e) {
    std::cerr << "capacity error: " << e.what() << '\n';
    return 3;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return 2;
  } catch (const ParameterError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
