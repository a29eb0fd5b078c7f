#pragma once

#include <vector>

#include "cdp/graph.hpp"

namespace cdp {

/// Maximum set of internally disjoint st-paths in a single-relation graph.
/// Witness paths carry color 0 unless relabeled by the caller.
struct ConnectivityResult {
  int kappa = 0;
  PathSet witness;
};

/// Nodes (other than s, t) whose removal disconnects s from t. Sorted.
using CutSet = std::vector<NodeId>;

/// Unweighted BFS distances. Nodes farther than max_depth, or unreachable,
/// get kUnreachable. Nodes in `blocked` (if non-empty, indexed by id) are
/// never entered.
std::vector<int> bfs_distances(const UniGraph& g, NodeId from, int max_depth = kUnreachable,
                               std::span<const char> blocked = {});

/// Same search, also returning the nodes reached in visiting order.
struct BfsTree {
  std::vector<int> dist;
  std::vector<NodeId> order;
};
BfsTree bfs_tree(const UniGraph& g, NodeId from, int max_depth = kUnreachable,
                 std::span<const char> blocked = {});

/// Menger connectivity via unit-capacity max-flow on the node-split digraph,
/// shortest augmenting paths. An (s,t) edge, if present, contributes one
/// direct path and is otherwise ignored.
ConnectivityResult vertex_connectivity(const UniGraph& g, const Query& q);

/// Empty when s,t are disconnected, adjacent, or 2-connected.
CutSet st_cut_nodes(const UniGraph& g, const Query& q);

/// Flow state kept alive across small graph edits (one recolored node per
/// step in the exact solver). Each edit cancels at most the flow unit through
/// the changed node, then re-augments on the residual graph.
class FlowState {
 public:
  FlowState(UniGraph g, const Query& q);

  int kappa() const { return flow_ + (direct_ ? 1 : 0); }
  ConnectivityResult result() const;
  const UniGraph& graph() const { return graph_; }

  /// `next` must have the same node count. Edges that vanished anywhere in
  /// the graph are handled, though the intended use changes only edges at
  /// `changed`. Returns the number of augmentations performed.
  int reconnect(NodeId changed, UniGraph next);

 private:
  bool flows(NodeId u, NodeId w) const;
  bool carries(NodeId v) const { return prev_[static_cast<std::size_t>(v)] != kNoNode; }
  void cancel_through(NodeId v);
  bool augment();
  int augment_all();

  UniGraph graph_;
  NodeId s_;
  NodeId t_;
  bool direct_ = false;
  int flow_ = 0;
  // For internal nodes: flow successor / predecessor, or kNoNode.
  // prev_[w] == s marks an s->w flow edge; next_[v] == t a v->t flow edge.
  std::vector<NodeId> next_;
  std::vector<NodeId> prev_;
  // BFS scratch, reused across augmentations.
  std::vector<int> parent_;
  std::vector<int> queue_;
};

/// Applies one edit to `state` and returns the refreshed result.
ConnectivityResult incremental_reconnect(FlowState& state, NodeId changed, UniGraph next);

}  // namespace cdp
