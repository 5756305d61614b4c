#pragma once

#include <map>
#include <string>
#include <tuple>
#include <vector>

namespace hybrid {

using NodeId = std::string;
using EdgeId = std::string;

/// A finite directed multigraph. Node and edge identifiers are opaque
/// strings; iteration order is insertion order.
class Graph {
 public:
  Graph() = default;

  const std::vector<NodeId>& nodes() const { return nodes_; }
  const std::vector<EdgeId>& edges() const { return edges_; }

  bool has_node(const NodeId& a) const;
  bool has_edge(const EdgeId& e) const;
  const NodeId& src(const EdgeId& e) const;
  const NodeId& tgt(const EdgeId& e) const;

  /// Outgoing edges of a node, in insertion order.
  std::vector<EdgeId> out_edges(const NodeId& a) const;

  bool operator==(const Graph& other) const;

  friend Graph make_graph(
      const std::vector<NodeId>& nodes,
      const std::vector<std::tuple<EdgeId, NodeId, NodeId>>& edges);

 private:
  std::vector<NodeId> nodes_;
  std::vector<EdgeId> edges_;
  std::map<EdgeId, NodeId> src_;
  std::map<EdgeId, NodeId> tgt_;
};

/// A map of graphs: total node and edge assignments between two graphs.
/// Commutation with src/tgt is checked by validate_graph_map, not here.
struct GraphMap {
  Graph dom;
  Graph cod;
  std::map<NodeId, NodeId> node_map;
  std::map<EdgeId, EdgeId> edge_map;

  const NodeId& node(const NodeId& a) const;
  const EdgeId& edge(const EdgeId& e) const;
};

struct GraphMapViolation {
  EdgeId edge;
  std::string message;
};

/// Throws DuplicateIdentifier or DanglingEndpoint.
Graph make_graph(const std::vector<NodeId>& nodes,
                 const std::vector<std::tuple<EdgeId, NodeId, NodeId>>& edges);

GraphMap identity_graph_map(const Graph& g);

/// Empty result iff node_map(src(e)) = src(edge_map(e)) and likewise for
/// targets, for every edge of the domain. Totality failures are reported too.
std::vector<GraphMapViolation> validate_graph_map(const GraphMap& f);

/// Set-theoretic composition g after f. Throws DomainMismatch unless
/// f.cod == g.dom.
GraphMap compose_graph_maps(const GraphMap& g, const GraphMap& f);

/// The chain 0 -> 1 -> ... -> k: nodes "0".."k", edge "i" from i to i+1.
/// k = 0 gives a single node and no edges.
Graph chain_graph(int k);

}  // namespace hybrid
