#ifndef GCONN_JSON_IO_HPP
#define GCONN_JSON_IO_HPP

#include <json.hpp>

#include "gconn/characterize.hpp"
#include "gconn/construct.hpp"
#include "gconn/graph.hpp"
#include "gconn/spanning_pack.hpp"
#include "gconn/steiner.hpp"

// JSON mirrors of the result types. Edges are [u, v] pairs; vertex sets are
// sorted vertex arrays; enums are their CLI spelling.

namespace gconn {

inline void to_json(nlohmann::json& j, const Edge& e) { j = nlohmann::json::array({e.u, e.v}); }
inline void from_json(const nlohmann::json& j, Edge& e) { e = Edge(j.at(0), j.at(1)); }

inline std::vector<int> mask_to_vertices(std::uint32_t mask) {
  std::vector<int> out;
  while (mask) {
    out.push_back(lowest_bit(mask));
    mask &= mask - 1;
  }
  return out;
}

inline void to_json(nlohmann::json& j, const Graph& g) {
  j = nlohmann::json{{"n", g.order()}, {"edges", g.edges()}};
}
inline void from_json(const nlohmann::json& j, Graph& g) {
  g = Graph(j.at("n").get<int>());
  for (const Edge& e : j.at("edges").get<std::vector<Edge>>()) g.add_edge(e.u, e.v);
}

inline void to_json(nlohmann::json& j, const DeletionSet& m) {
  j = nlohmann::json{{"n", m.n}, {"edges", m.edges}, {"max_degree", m.max_degree}};
}
inline void from_json(const nlohmann::json& j, DeletionSet& m) {
  m = DeletionSet::make(j.at("n").get<int>(), j.at("edges").get<std::vector<Edge>>());
}

inline void to_json(nlohmann::json& j, const SteinerTree& t) {
  j = nlohmann::json{{"edges", t.edges}};
}
inline void from_json(const nlohmann::json& j, SteinerTree& t) {
  t = SteinerTree::of_edges(j.at("edges").get<std::vector<Edge>>());
}

inline std::string mode_name(DisjointMode mode) {
  return mode == DisjointMode::kInternal ? "internal" : "edge";
}
inline DisjointMode mode_of_name(const std::string& name) {
  if (name == "internal") return DisjointMode::kInternal;
  if (name == "edge") return DisjointMode::kEdge;
  throw ParameterError("unknown disjointness mode: " + name);
}

inline void to_json(nlohmann::json& j, const TreeFamily& f) {
  std::vector<std::string> classes;
  for (TreeClass c : f.classes)
    classes.push_back(c == TreeClass::kInside ? "inside" : "crossing");
  j = nlohmann::json{{"mode", mode_name(f.mode)}, {"trees", f.trees}, {"classes", classes}};
}
inline void from_json(const nlohmann::json& j, TreeFamily& f) {
  f.mode = mode_of_name(j.at("mode").get<std::string>());
  f.trees = j.at("trees").get<std::vector<SteinerTree>>();
  f.classes.clear();
  for (const std::string& c : j.at("classes").get<std::vector<std::string>>())
    f.classes.push_back(c == "inside" ? TreeClass::kInside : TreeClass::kCrossing);
}

inline void to_json(nlohmann::json& j, const Partition& p) {
  std::vector<std::vector<int>> blocks;
  for (std::uint32_t b : p.blocks) blocks.push_back(mask_to_vertices(b));
  j = nlohmann::json{{"blocks", blocks}, {"crossing", p.crossing}};
}
inline void from_json(const nlohmann::json& j, Partition& p) {
  p.blocks.clear();
  for (const std::vector<int>& block : j.at("blocks").get<std::vector<std::vector<int>>>()) {
    std::uint32_t mask = 0;
    for (int v : block) mask |= 1u << v;
    p.blocks.push_back(mask);
  }
  p.crossing = j.at("crossing").get<int>();
}

inline void to_json(nlohmann::json& j, const PackCertificate& c) {
  j = nlohmann::json{{"requested", c.requested}};
  if (c.has_trees())
    j["trees"] = c.trees;
  else
    j["witness"] = *c.witness;
}
inline void from_json(const nlohmann::json& j, PackCertificate& c) {
  c.requested = j.at("requested").get<int>();
  c.trees.clear();
  c.witness.reset();
  if (j.contains("trees"))
    c.trees = j.at("trees").get<std::vector<std::vector<Edge>>>();
  else
    c.witness = j.at("witness").get<Partition>();
}

inline void to_json(nlohmann::json& j, const CharacterizationCase& c) {
  j = nlohmann::json{{"m", c.m},
                     {"predicate", c.predicate},
                     {"solver_value", c.solver_value},
                     {"agree", c.agree},
                     {"vacuous", c.vacuous}};
}
inline void from_json(const nlohmann::json& j, CharacterizationCase& c) {
  c.m = j.at("m").get<DeletionSet>();
  c.predicate = j.at("predicate").get<bool>();
  c.solver_value = j.at("solver_value").get<int>();
  c.agree = j.at("agree").get<bool>();
  c.vacuous = j.at("vacuous").get<bool>();
}

inline void to_json(nlohmann::json& j, const CharacterizationReport& r) {
  j = nlohmann::json{{"n", r.n},
                     {"k", r.k},
                     {"theorem", r.theorem},
                     {"mode", r.mode == DisjointMode::kInternal ? "kappa" : "lambda"},
                     {"classes_checked", r.classes_checked},
                     {"counterexamples", r.counterexamples},
                     {"wall_time_ms", r.wall_time_ms}};
}

}  // namespace gconn

#endif
