#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "cdp/graph.hpp"

namespace cdp {

using Edge = std::pair<NodeId, NodeId>;

/// Maximum-cardinality matching in a general graph (Edmonds' blossom
/// algorithm with explicit queues, no recursion). Edges come back as
/// (min, max) pairs sorted ascending.
std::vector<Edge> max_matching(const UniGraph& h);

/// Ordered pairs <u,v> such that (s,u), (u,v), (v,t) all have one color.
struct PairGraph {
  std::size_t node_count = 0;
  std::map<Edge, std::vector<Color>> arcs;  // colors ascending

  /// Underlying undirected graph H.
  UniGraph undirected() const;
  /// The length-3 path realizing the undirected edge {u,v}: smallest
  /// (color, ordered pair) among the recorded arcs.
  std::optional<Path> realize(NodeId u, NodeId v, const Query& q) const;
};

/// Expects st edges and common neighbours of s,t already removed.
PairGraph build_pair_graph(const ColorGraph& g, const Query& q);

}  // namespace cdp
