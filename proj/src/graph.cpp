#include "hybrid/graph.hpp"

#include <algorithm>
#include <set>

#include "hybrid/errors.hpp"

namespace hybrid {

bool Graph::has_node(const NodeId& a) const {
  return std::find(nodes_.begin(), nodes_.end(), a) != nodes_.end();
}

bool Graph::has_edge(const EdgeId& e) const { return src_.count(e) > 0; }

const NodeId& Graph::src(const EdgeId& e) const {
  auto it = src_.find(e);
  if (it == src_.end()) throw DanglingEndpoint("unknown edge '" + e + "'");
  return it->second;
}

const NodeId& Graph::tgt(const EdgeId& e) const {
  auto it = tgt_.find(e);
  if (it == tgt_.end()) throw DanglingEndpoint("unknown edge '" + e + "'");
  return it->second;
}

std::vector<EdgeId> Graph::out_edges(const NodeId& a) const {
  std::vector<EdgeId> out;
  for (const auto& e : edges_)
    if (src_.at(e) == a) out.push_back(e);
  return out;
}

bool Graph::operator==(const Graph& other) const {
  return nodes_ == other.nodes_ && edges_ == other.edges_ &&
         src_ == other.src_ && tgt_ == other.tgt_;
}

Graph make_graph(const std::vector<NodeId>& nodes,
                 const std::vector<std::tuple<EdgeId, NodeId, NodeId>>& edges) {
  Graph g;
  std::set<NodeId> seen_nodes;
  for (const auto& a : nodes) {
    if (!seen_nodes.insert(a).second)
      throw DuplicateIdentifier("duplicate node '" + a + "'");
    g.nodes_.push_back(a);
  }
  std::set<EdgeId> seen_edges;
  for (const auto& [e, s, t] : edges) {
    if (!seen_edges.insert(e).second)
      throw DuplicateIdentifier("duplicate edge '" + e + "'");
    if (!seen_nodes.count(s))
      throw DanglingEndpoint("edge '" + e + "' has unknown source '" + s + "'");
    if (!seen_nodes.count(t))
      throw DanglingEndpoint("edge '" + e + "' has unknown target '" + t + "'");
    g.edges_.push_back(e);
    g.src_[e] = s;
    g.tgt_[e] = t;
  }
  return g;
}

const NodeId& GraphMap::node(const NodeId& a) const {
  auto it = node_map.find(a);
  if (it == node_map.end())
    throw StructuralMismatch("node '" + a + "' has no image");
  return it->second;
}

const EdgeId& GraphMap::edge(const EdgeId& e) const {
  auto it = edge_map.find(e);
  if (it == edge_map.end())
    throw StructuralMismatch("edge '" + e + "' has no image");
  return it->second;
}

GraphMap identity_graph_map(const Graph& g) {
  GraphMap f{g, g, {}, {}};
  for (const auto& a : g.nodes()) f.node_map[a] = a;
  for (const auto& e : g.edges()) f.edge_map[e] = e;
  return f;
}

std::vector<GraphMapViolation> validate_graph_map(const GraphMap& f) {
  std::vector<GraphMapViolation> report;
  for (const auto& a : f.dom.nodes()) {
    auto it = f.node_map.find(a);
    if (it == f.node_map.end()) {
      report.push_back({"", "node '" + a + "' has no image"});
    } else if (!f.cod.has_node(it->second)) {
      report.push_back({"", "node '" + a + "' maps to unknown node '" +
                                it->second + "'"});
    }
  }
  for (const auto& e : f.dom.edges()) {
    auto it = f.edge_map.find(e);
    if (it == f.edge_map.end()) {
      report.push_back({e, "edge '" + e + "' has no image"});
      continue;
    }
    if (!f.cod.has_edge(it->second)) {
      report.push_back(
          {e, "edge '" + e + "' maps to unknown edge '" + it->second + "'"});
      continue;
    }
    const EdgeId& fe = it->second;
    auto ns = f.node_map.find(f.dom.src(e));
    auto nt = f.node_map.find(f.dom.tgt(e));
    if (ns == f.node_map.end() || nt == f.node_map.end()) continue;
    if (ns->second != f.cod.src(fe))
      report.push_back({e, "src mismatch: node_map(src(" + e + ")) = '" +
                                ns->second + "' but src(" + fe + ") = '" +
                                f.cod.src(fe) + "'"});
    if (nt->second != f.cod.tgt(fe))
      report.push_back({e, "tgt mismatch: node_map(tgt(" + e + ")) = '" +
                                nt->second + "' but tgt(" + fe + ") = '" +
                                f.cod.tgt(fe) + "'"});
  }
  return report;
}

GraphMap compose_graph_maps(const GraphMap& g, const GraphMap& f) {
  if (!(f.cod == g.dom))
    throw DomainMismatch("codomain of inner map differs from domain of outer");
  GraphMap h{f.dom, g.cod, {}, {}};
  for (const auto& [a, b] : f.node_map) h.node_map[a] = g.node(b);
  for (const auto& [e, d] : f.edge_map) h.edge_map[e] = g.edge(d);
  return h;
}

Graph chain_graph(int k) {
  if (k < 0) throw Error("chain_graph: k must be nonnegative");
  std::vector<NodeId> nodes;
  std::vector<std::tuple<EdgeId, NodeId, NodeId>> edges;
  for (int i = 0; i <= k; ++i) nodes.push_back(std::to_string(i));
  for (int i = 0; i < k; ++i)
    edges.emplace_back(std::to_string(i), std::to_string(i),
                       std::to_string(i + 1));
  return make_graph(nodes, edges);
}

}  // namespace hybrid
