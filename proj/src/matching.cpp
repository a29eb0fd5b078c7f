#include "cdp/matching.hpp"

#include <algorithm>
#include <tuple>

namespace cdp {

namespace {

/// One search tree rooted at a free vertex. Scratch arrays are sized once and
/// reset only over the vertices a search touched.
class BlossomSearch {
 public:
  explicit BlossomSearch(const UniGraph& h)
      : h_(h),
        n_(h.node_count()),
        match_(n_, kNoNode),
        parent_(n_, kNoNode),
        base_(n_),
        used_(n_, 0),
        lca_mark_(n_, 0),
        blossom_mark_(n_, 0) {
    for (std::size_t i = 0; i < n_; ++i) base_[i] = static_cast<NodeId>(i);
  }

  std::vector<NodeId>& match() { return match_; }

  /// Augments from `root` if possible.
  bool augment_from(NodeId root) {
    const NodeId end = find_path(root);
    reset_touched();
    if (end == kNoNode) return false;
    // parent_ was reset; the alternating path was recorded in path_parent_.
    NodeId v = end;
    while (v != kNoNode) {
      const NodeId pv = path_parent_[static_cast<std::size_t>(v)];
      const NodeId ppv = match_[static_cast<std::size_t>(pv)];
      match_[static_cast<std::size_t>(v)] = pv;
      match_[static_cast<std::size_t>(pv)] = v;
      v = ppv;
    }
    return true;
  }

 private:
  std::size_t idx(NodeId v) const { return static_cast<std::size_t>(v); }

  void touch(NodeId v) {
    if (!touched_flag_.empty() && touched_flag_[idx(v)]) return;
    if (touched_flag_.empty()) touched_flag_.assign(n_, 0);
    touched_flag_[idx(v)] = 1;
    touched_.push_back(v);
  }

  void reset_touched() {
    for (NodeId v : touched_) {
      parent_[idx(v)] = kNoNode;
      base_[idx(v)] = v;
      used_[idx(v)] = 0;
      touched_flag_[idx(v)] = 0;
    }
    touched_.clear();
  }

  NodeId lca(NodeId a, NodeId b) {
    ++lca_stamp_;
    while (true) {
      a = base_[idx(a)];
      lca_mark_[idx(a)] = lca_stamp_;
      if (match_[idx(a)] == kNoNode) break;
      a = parent_[idx(match_[idx(a)])];
    }
    while (true) {
      b = base_[idx(b)];
      if (lca_mark_[idx(b)] == lca_stamp_) return b;
      b = parent_[idx(match_[idx(b)])];
    }
  }

  void mark_path(NodeId v, NodeId b, NodeId child) {
    while (base_[idx(v)] != b) {
      blossom_mark_[idx(base_[idx(v)])] = blossom_stamp_;
      blossom_mark_[idx(base_[idx(match_[idx(v)])])] = blossom_stamp_;
      parent_[idx(v)] = child;
      touch(v);
      child = match_[idx(v)];
      v = parent_[idx(match_[idx(v)])];
    }
  }

  NodeId find_path(NodeId root) {
    queue_.clear();
    used_[idx(root)] = 1;
    touch(root);
    queue_.push_back(root);
    for (std::size_t head = 0; head < queue_.size(); ++head) {
      const NodeId v = queue_[head];
      for (NodeId to : h_.neighbors(v)) {
        if (base_[idx(v)] == base_[idx(to)] || match_[idx(v)] == to) continue;
        if (to == root || (match_[idx(to)] != kNoNode && parent_[idx(match_[idx(to)])] != kNoNode)) {
          const NodeId cur_base = lca(v, to);
          ++blossom_stamp_;
          mark_path(v, cur_base, to);
          mark_path(to, cur_base, v);
          // Only touched vertices can belong to the tree, hence the blossom.
          const std::size_t touched_now = touched_.size();
          for (std::size_t k = 0; k < touched_now; ++k) {
            const NodeId i = touched_[k];
            if (blossom_mark_[idx(base_[idx(i)])] == blossom_stamp_) {
              base_[idx(i)] = cur_base;
              if (!used_[idx(i)]) {
                used_[idx(i)] = 1;
                queue_.push_back(i);
              }
            }
          }
        } else if (parent_[idx(to)] == kNoNode) {
          parent_[idx(to)] = v;
          touch(to);
          if (match_[idx(to)] == kNoNode) {
            snapshot_path(to);
            return to;
          }
          const NodeId to2 = match_[idx(to)];
          used_[idx(to2)] = 1;
          touch(to2);
          queue_.push_back(to2);
        }
      }
    }
    return kNoNode;
  }

  void snapshot_path(NodeId end) {
    if (path_parent_.empty()) path_parent_.assign(n_, kNoNode);
    NodeId v = end;
    while (v != kNoNode) {
      const NodeId pv = parent_[idx(v)];
      path_parent_[idx(v)] = pv;
      v = match_[idx(pv)];
    }
  }

  const UniGraph& h_;
  std::size_t n_;
  std::vector<NodeId> match_;
  std::vector<NodeId> parent_;
  std::vector<NodeId> path_parent_;
  std::vector<NodeId> base_;
  std::vector<char> used_;
  std::vector<unsigned> lca_mark_;
  std::vector<unsigned> blossom_mark_;
  unsigned lca_stamp_ = 0;
  unsigned blossom_stamp_ = 0;
  std::vector<NodeId> queue_;
  std::vector<NodeId> touched_;
  std::vector<char> touched_flag_;
};

}  // namespace

std::vector<Edge> max_matching(const UniGraph& h) {
  BlossomSearch search(h);
  auto& match = search.match();
  const auto n = static_cast<NodeId>(h.node_count());
  // Greedy warm start.
  for (NodeId v = 0; v < n; ++v) {
    if (match[static_cast<std::size_t>(v)] != kNoNode) continue;
    for (NodeId w : h.neighbors(v)) {
      if (match[static_cast<std::size_t>(w)] == kNoNode) {
        match[static_cast<std::size_t>(v)] = w;
        match[static_cast<std::size_t>(w)] = v;
        break;
      }
    }
  }
  // A vertex that fails to augment once never becomes augmentable later.
  for (NodeId v = 0; v < n; ++v) {
    if (match[static_cast<std::size_t>(v)] == kNoNode && h.degree(v) > 0) search.augment_from(v);
  }
  std::vector<Edge> out;
  for (NodeId v = 0; v < n; ++v) {
    const NodeId w = match[static_cast<std::size_t>(v)];
    if (w != kNoNode && v < w) out.emplace_back(v, w);
  }
  return out;
}

UniGraph PairGraph::undirected() const {
  UniGraph h(node_count);
  for (const auto& [arc, colors] : arcs) h.add_edge(arc.first, arc.second);
  return h;
}

std::optional<Path> PairGraph::realize(NodeId u, NodeId v, const Query& q) const {
  std::optional<std::tuple<Color, NodeId, NodeId>> best;
  for (const Edge& arc : {Edge{u, v}, Edge{v, u}}) {
    auto it = arcs.find(arc);
    if (it == arcs.end() || it->second.empty()) continue;
    const auto cand = std::make_tuple(it->second.front(), arc.first, arc.second);
    if (!best || cand < *best) best = cand;
  }
  if (!best) return std::nullopt;
  const auto [color, a, b] = *best;
  return Path{color, {q.source, a, b, q.target}};
}

PairGraph build_pair_graph(const ColorGraph& g, const Query& q) {
  check_query(g.node_count(), q);
  PairGraph out;
  out.node_count = g.node_count();
  const NodeId s = q.source;
  const NodeId t = q.target;
  for (Color c = 1; c <= g.color_count(); ++c) {
    const UniGraph& layer = g.layer(c);
    for (NodeId u : layer.neighbors(s)) {
      if (u == t) continue;
      for (NodeId v : layer.neighbors(u)) {
        if (v == s || v == t || !layer.has_edge(v, t)) continue;
        out.arcs[{u, v}].push_back(c);
      }
    }
  }
  return out;
}

}  // namespace cdp
