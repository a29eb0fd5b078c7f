#include "cdp/flow.hpp"

#include <algorithm>
#include <deque>

namespace cdp {

std::vector<int> bfs_distances(const UniGraph& g, NodeId from, int max_depth,
                               std::span<const char> blocked) {
  return bfs_tree(g, from, max_depth, blocked).dist;
}

BfsTree bfs_tree(const UniGraph& g, NodeId from, int max_depth, std::span<const char> blocked) {
  BfsTree out;
  auto& dist = out.dist;
  dist.assign(g.node_count(), kUnreachable);
  auto is_blocked = [&](NodeId v) {
    return !blocked.empty() && blocked[static_cast<std::size_t>(v)] != 0;
  };
  if (is_blocked(from)) return out;
  auto& frontier = out.order;
  frontier.push_back(from);
  dist[static_cast<std::size_t>(from)] = 0;
  for (std::size_t head = 0; head < frontier.size(); ++head) {
    const NodeId u = frontier[head];
    const int du = dist[static_cast<std::size_t>(u)];
    if (du >= max_depth) continue;
    for (NodeId w : g.neighbors(u)) {
      auto& dw = dist[static_cast<std::size_t>(w)];
      if (dw != kUnreachable || is_blocked(w)) continue;
      dw = du + 1;
      frontier.push_back(w);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Residual graph states: 2v is v_in, 2v+1 is v_out. The search starts at
// s_out and stops at t_in, so s_in and t_out never matter.

namespace {

constexpr int in_state(NodeId v) { return 2 * v; }
constexpr int out_state(NodeId v) { return 2 * v + 1; }

}  // namespace

FlowState::FlowState(UniGraph g, const Query& q)
    : graph_(std::move(g)),
      s_(q.source),
      t_(q.target),
      next_(graph_.node_count(), kNoNode),
      prev_(graph_.node_count(), kNoNode) {
  check_query(graph_.node_count(), q);
  direct_ = graph_.has_edge(s_, t_);
  augment_all();
}

bool FlowState::flows(NodeId u, NodeId w) const {
  if (u == s_) return prev_[static_cast<std::size_t>(w)] == s_;
  return next_[static_cast<std::size_t>(u)] == w;
}

bool FlowState::augment() {
  const std::size_t states = 2 * graph_.node_count();
  parent_.assign(states, -1);
  queue_.clear();
  const int start = out_state(s_);
  const int goal = in_state(t_);
  parent_[static_cast<std::size_t>(start)] = start;
  queue_.push_back(start);

  auto visit = [&](int from, int to) {
    if (parent_[static_cast<std::size_t>(to)] != -1) return false;
    parent_[static_cast<std::size_t>(to)] = from;
    queue_.push_back(to);
    return to == goal;
  };

  bool found = false;
  for (std::size_t head = 0; head < queue_.size() && !found; ++head) {
    const int cur = queue_[head];
    const NodeId v = cur / 2;
    if (cur % 2 == 1) {
      // v_out: forward edge arcs, then the reverse of v's node arc.
      for (NodeId w : graph_.neighbors(v)) {
        if (w == s_ || (v == s_ && w == t_) || flows(v, w)) continue;
        if (visit(cur, in_state(w))) {
          found = true;
          break;
        }
      }
      if (!found && v != s_ && carries(v)) visit(cur, in_state(v));
    } else {
      // v_in with v internal: forward node arc if free, else cancel the
      // flow edge entering v.
      if (!carries(v)) {
        visit(cur, out_state(v));
      } else {
        const NodeId u = prev_[static_cast<std::size_t>(v)];
        if (u != s_) visit(cur, out_state(u));
      }
    }
  }
  if (!found) return false;

  std::vector<int> states_on_path;
  for (int cur = goal; cur != start; cur = parent_[static_cast<std::size_t>(cur)]) {
    states_on_path.push_back(cur);
  }
  states_on_path.push_back(start);
  std::reverse(states_on_path.begin(), states_on_path.end());

  for (std::size_t k = 0; k + 1 < states_on_path.size(); ++k) {
    const int a = states_on_path[k];
    const int b = states_on_path[k + 1];
    const NodeId va = a / 2;
    const NodeId vb = b / 2;
    if (va == vb) continue;  // node arc; flow there is implied by prev_/next_
    if (a % 2 == 1) {
      // va_out -> vb_in: push one unit along va -> vb.
      if (va != s_) next_[static_cast<std::size_t>(va)] = vb;
      if (vb != t_) prev_[static_cast<std::size_t>(vb)] = va;
    } else {
      // va_in -> vb_out: cancel the unit on vb -> va.
      if (vb != s_ && next_[static_cast<std::size_t>(vb)] == va) next_[static_cast<std::size_t>(vb)] = kNoNode;
      if (prev_[static_cast<std::size_t>(va)] == vb) prev_[static_cast<std::size_t>(va)] = kNoNode;
    }
  }
  ++flow_;
  return true;
}

int FlowState::augment_all() {
  int count = 0;
  while (augment()) ++count;
  return count;
}

void FlowState::cancel_through(NodeId v) {
  if (v == s_ || v == t_ || !carries(v)) return;
  // Walk forward; a return to v means the unit is a circulation.
  std::vector<NodeId> unit{v};
  NodeId cur = v;
  bool cycle = false;
  while (true) {
    const NodeId nx = next_[static_cast<std::size_t>(cur)];
    if (nx == t_ || nx == kNoNode) break;
    if (nx == v) {
      cycle = true;
      break;
    }
    unit.push_back(nx);
    cur = nx;
  }
  if (!cycle) {
    cur = v;
    while (true) {
      const NodeId pv = prev_[static_cast<std::size_t>(cur)];
      if (pv == s_ || pv == kNoNode) break;
      unit.push_back(pv);
      cur = pv;
    }
    --flow_;
  }
  for (NodeId w : unit) {
    next_[static_cast<std::size_t>(w)] = kNoNode;
    prev_[static_cast<std::size_t>(w)] = kNoNode;
  }
}

int FlowState::reconnect(NodeId changed, UniGraph next) {
  if (next.node_count() != graph_.node_count()) {
    throw std::invalid_argument("reconnect: node count changed");
  }
  cancel_through(changed);
  graph_ = std::move(next);
  direct_ = graph_.has_edge(s_, t_);
  for (std::size_t v = 0; v < graph_.node_count(); ++v) {
    const auto node = static_cast<NodeId>(v);
    const NodeId p = prev_[v];
    if (p != kNoNode && !graph_.has_edge(p, node)) cancel_through(node);
    const NodeId nx = next_[v];
    if (nx != kNoNode && !graph_.has_edge(node, nx)) cancel_through(node);
  }
  return augment_all();
}

ConnectivityResult FlowState::result() const {
  ConnectivityResult out;
  out.kappa = kappa();
  if (direct_) out.witness.push_back(Path{0, {s_, t_}});
  for (std::size_t w = 0; w < graph_.node_count(); ++w) {
    if (prev_[w] != s_) continue;
    Path p{0, {s_}};
    for (NodeId cur = static_cast<NodeId>(w); cur != t_; cur = next_[static_cast<std::size_t>(cur)]) {
      p.nodes.push_back(cur);
    }
    p.nodes.push_back(t_);
    out.witness.push_back(std::move(p));
  }
  return out;
}

ConnectivityResult vertex_connectivity(const UniGraph& g, const Query& q) {
  return FlowState(g, q).result();
}

ConnectivityResult incremental_reconnect(FlowState& state, NodeId changed, UniGraph next) {
  state.reconnect(changed, std::move(next));
  return state.result();
}

namespace {

bool connected_without(const UniGraph& g, const Query& q, NodeId skip) {
  std::vector<char> blocked(g.node_count(), 0);
  blocked[static_cast<std::size_t>(skip)] = 1;
  return bfs_distances(g, q.source, kUnreachable, blocked)[static_cast<std::size_t>(q.target)] !=
         kUnreachable;
}

}  // namespace

CutSet st_cut_nodes(const UniGraph& g, const Query& q) {
  const auto res = vertex_connectivity(g, q);
  if (res.kappa != 1 || g.has_edge(q.source, q.target)) return {};
  // A cut node lies on every st-path, in particular on the witness.
  CutSet out;
  for (NodeId v : res.witness.front().internal()) {
    if (!connected_without(g, q, v)) out.push_back(v);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace cdp
