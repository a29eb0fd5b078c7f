#pragma once

#include <algorithm>
#include <functional>
#include <initializer_list>
#include <tuple>
#include <vector>

#include "cdp/graph.hpp"

namespace fx {

using cdp::Color;
using cdp::ColorGraph;
using cdp::NodeId;
using cdp::Query;
using cdp::UniGraph;

inline constexpr NodeId s = 0;
inline constexpr NodeId t = 1;

inline ColorGraph make(std::size_t n, int c, std::initializer_list<std::tuple<NodeId, NodeId, Color>> edges) {
  ColorGraph g(n, c);
  for (auto [u, v, col] : edges) g.add_edge(u, v, col);
  return g;
}

inline UniGraph uni(std::size_t n, std::initializer_list<std::pair<NodeId, NodeId>> edges) {
  UniGraph g(n);
  for (auto [u, v] : edges) g.add_edge(u, v);
  return g;
}

inline Query st(std::optional<int> bound = std::nullopt) { return Query{s, t, bound}; }

// a = 2, b = 3: color 1 s-a-t, color 2 s-b-t.
inline ColorGraph fix_a() { return make(4, 2, {{0, 2, 1}, {2, 1, 1}, {0, 3, 2}, {3, 1, 2}}); }
inline constexpr const char* kFixAText = "p cdp 4 2\ne 0 2 1\ne 2 1 1\ne 0 3 2\ne 3 1 2\n";

// a = 2: (s,a) color 1, (a,t) color 2.
inline ColorGraph fix_b() { return make(3, 2, {{0, 2, 1}, {2, 1, 2}}); }

// x = 2, a = 3, b = 4, one color.
inline ColorGraph fix_c() { return make(5, 1, {{0, 2, 1}, {2, 1, 1}, {0, 3, 1}, {3, 4, 1}, {4, 1, 1}}); }

/// s - 2 - 3 - ... - (k+1) - t in one color: k internal nodes.
inline ColorGraph chain(int internal) {
  ColorGraph g(static_cast<std::size_t>(internal + 2), 1);
  NodeId prev = s;
  for (int i = 0; i < internal; ++i) {
    g.add_edge(prev, 2 + i, 1);
    prev = 2 + i;
  }
  g.add_edge(prev, t, 1);
  return g;
}

/// Every simple uni-color st-path with at most l edges, no pruning, sorted.
inline std::vector<cdp::Path> naive_paths(const ColorGraph& g, const Query& q, int l) {
  std::vector<cdp::Path> out;
  std::vector<NodeId> path{q.source};
  std::vector<char> seen(g.node_count(), 0);
  seen[static_cast<std::size_t>(q.source)] = 1;
  Color color = 0;
  std::function<void(NodeId)> dfs = [&](NodeId v) {
    if (static_cast<int>(path.size()) - 1 >= l) return;
    for (NodeId w : g.layer(color).neighbors(v)) {
      if (seen[static_cast<std::size_t>(w)]) continue;
      path.push_back(w);
      if (w == q.target) {
        out.push_back(cdp::Path{color, path});
      } else {
        seen[static_cast<std::size_t>(w)] = 1;
        dfs(w);
        seen[static_cast<std::size_t>(w)] = 0;
      }
      path.pop_back();
    }
  };
  for (color = 1; color <= g.color_count(); ++color) dfs(q.source);
  std::sort(out.begin(), out.end(), [](const cdp::Path& a, const cdp::Path& b) {
    return std::tie(a.color, a.nodes) < std::tie(b.color, b.nodes);
  });
  return out;
}

inline std::vector<cdp::Path> sorted(std::vector<cdp::Path> paths) {
  std::sort(paths.begin(), paths.end(), [](const cdp::Path& a, const cdp::Path& b) {
    return std::tie(a.color, a.nodes) < std::tie(b.color, b.nodes);
  });
  return paths;
}

}  // namespace fx
