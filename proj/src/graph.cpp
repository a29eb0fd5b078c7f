#include "cdp/graph.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>
#include <tuple>
#include <unordered_set>

#include "cdp/flow.hpp"

namespace cdp {

bool UniGraph::has_edge(NodeId u, NodeId v) const {
  const auto& a = adj_[static_cast<std::size_t>(u)];
  return std::binary_search(a.begin(), a.end(), v);
}

bool UniGraph::add_edge(NodeId u, NodeId v) {
  auto& au = adj_[static_cast<std::size_t>(u)];
  auto it = std::lower_bound(au.begin(), au.end(), v);
  if (it != au.end() && *it == v) return false;
  au.insert(it, v);
  auto& av = adj_[static_cast<std::size_t>(v)];
  av.insert(std::lower_bound(av.begin(), av.end(), u), u);
  ++edges_;
  return true;
}

bool UniGraph::remove_edge(NodeId u, NodeId v) {
  auto& au = adj_[static_cast<std::size_t>(u)];
  auto it = std::lower_bound(au.begin(), au.end(), v);
  if (it == au.end() || *it != v) return false;
  au.erase(it);
  auto& av = adj_[static_cast<std::size_t>(v)];
  av.erase(std::lower_bound(av.begin(), av.end(), u));
  --edges_;
  return true;
}

void UniGraph::isolate(NodeId v) {
  auto& av = adj_[static_cast<std::size_t>(v)];
  for (NodeId w : av) {
    auto& aw = adj_[static_cast<std::size_t>(w)];
    aw.erase(std::lower_bound(aw.begin(), aw.end(), v));
  }
  edges_ -= av.size();
  av.clear();
}

std::vector<std::pair<NodeId, NodeId>> UniGraph::edges() const {
  std::vector<std::pair<NodeId, NodeId>> out;
  out.reserve(edges_);
  for (std::size_t u = 0; u < adj_.size(); ++u) {
    for (NodeId v : adj_[u]) {
      if (static_cast<NodeId>(u) < v) out.emplace_back(static_cast<NodeId>(u), v);
    }
  }
  return out;
}

ColorGraph::ColorGraph(std::size_t node_count, int color_count) : nodes_(node_count) {
  if (color_count < 1) throw std::invalid_argument("color count must be positive");
  layers_.assign(static_cast<std::size_t>(color_count), UniGraph(node_count));
}

std::size_t ColorGraph::edge_count() const {
  std::size_t m = 0;
  for (const auto& layer : layers_) m += layer.edge_count();
  return m;
}

void ColorGraph::add_edge(NodeId u, NodeId v, Color color) {
  if (u < 0 || v < 0 || static_cast<std::size_t>(u) >= nodes_ ||
      static_cast<std::size_t>(v) >= nodes_) {
    throw std::invalid_argument("node id out of range");
  }
  if (u == v) throw std::invalid_argument("self-loop");
  if (!mutable_layer(color).add_edge(u, v)) {
    throw std::invalid_argument("duplicate edge within color " + std::to_string(color));
  }
}

bool ColorGraph::has_edge(NodeId u, NodeId v, Color color) const {
  if (color < 1 || color > color_count()) return false;
  if (u < 0 || v < 0 || static_cast<std::size_t>(u) >= nodes_ ||
      static_cast<std::size_t>(v) >= nodes_) {
    return false;
  }
  return layer(color).has_edge(u, v);
}

const UniGraph& ColorGraph::layer(Color color) const {
  if (color < 1 || color > color_count()) throw std::out_of_range("color out of range");
  return layers_[static_cast<std::size_t>(color - 1)];
}

UniGraph& ColorGraph::mutable_layer(Color color) {
  if (color < 1 || color > color_count()) throw std::out_of_range("color out of range");
  return layers_[static_cast<std::size_t>(color - 1)];
}

void check_query(std::size_t node_count, const Query& q) {
  auto in_range = [&](NodeId v) { return v >= 0 && static_cast<std::size_t>(v) < node_count; };
  if (!in_range(q.source) || !in_range(q.target)) {
    throw std::invalid_argument("query endpoint out of range");
  }
  if (q.source == q.target) throw std::invalid_argument("source equals target");
  if (q.length_bound && *q.length_bound < 1) {
    throw std::invalid_argument("length bound must be positive");
  }
}

// ---------------------------------------------------------------------------

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

long long to_int(std::string_view tok, std::size_t line) {
  long long value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw ParseError(line, "expected integer, got '" + std::string(tok) + "'");
  }
  return value;
}

}  // namespace

GraphFile parse_graph_file(std::string_view text) {
  GraphFile out;
  bool have_header = false;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;

    auto tok = split_ws(line);
    if (tok.empty() || tok[0].front() == '#') continue;

    if (tok[0] == "p") {
      if (have_header) throw ParseError(line_no, "duplicate header");
      if (tok.size() != 4 || tok[1] != "cdp") throw ParseError(line_no, "expected 'p cdp <n> <c>'");
      long long n = to_int(tok[2], line_no);
      long long c = to_int(tok[3], line_no);
      if (n < 0) throw ParseError(line_no, "negative node count");
      if (c < 1) throw ParseError(line_no, "color count must be positive");
      out.graph = ColorGraph(static_cast<std::size_t>(n), static_cast<int>(c));
      have_header = true;
      continue;
    }
    if (!have_header) throw ParseError(line_no, "header 'p cdp <n> <c>' must come first");

    const auto n = static_cast<long long>(out.graph.node_count());
    if (tok[0] == "e") {
      if (tok.size() != 4) throw ParseError(line_no, "expected 'e <u> <v> <color>'");
      long long u = to_int(tok[1], line_no);
      long long v = to_int(tok[2], line_no);
      long long c = to_int(tok[3], line_no);
      if (u < 0 || v < 0 || u >= n || v >= n) throw ParseError(line_no, "node id out of range");
      if (c < 1 || c > out.graph.color_count()) throw ParseError(line_no, "color out of range");
      if (u == v) throw ParseError(line_no, "self-loop");
      if (out.graph.has_edge(static_cast<NodeId>(u), static_cast<NodeId>(v), static_cast<Color>(c))) {
        throw ParseError(line_no, "duplicate edge within color " + std::to_string(c));
      }
      out.graph.add_edge(static_cast<NodeId>(u), static_cast<NodeId>(v), static_cast<Color>(c));
    } else if (tok[0] == "q") {
      if (tok.size() != 3) throw ParseError(line_no, "expected 'q <s> <t>'");
      long long s = to_int(tok[1], line_no);
      long long t = to_int(tok[2], line_no);
      if (s < 0 || t < 0 || s >= n || t >= n) throw ParseError(line_no, "node id out of range");
      if (s == t) throw ParseError(line_no, "query source equals target");
      out.query = Query{static_cast<NodeId>(s), static_cast<NodeId>(t), std::nullopt};
    } else {
      throw ParseError(line_no, "unknown line type '" + std::string(tok[0]) + "'");
    }
  }
  if (!have_header) throw ParseError(line_no, "missing header 'p cdp <n> <c>'");
  return out;
}

ColorGraph parse_graph(std::string_view text) { return parse_graph_file(text).graph; }

std::string serialize_graph(const ColorGraph& g, const std::optional<Query>& q) {
  std::ostringstream out;
  out << "p cdp " << g.node_count() << ' ' << g.color_count() << '\n';
  if (q) out << "q " << q->source << ' ' << q->target << '\n';
  for (Color c = 1; c <= g.color_count(); ++c) {
    for (auto [u, v] : g.layer(c).edges()) out << "e " << u << ' ' << v << ' ' << c << '\n';
  }
  return out.str();
}

// ---------------------------------------------------------------------------

StrippedGraph strip_st_edges(const ColorGraph& g, const Query& q) {
  check_query(g.node_count(), q);
  StrippedGraph out{g, {}};
  for (Color c = 1; c <= g.color_count(); ++c) {
    if (out.graph.mutable_layer(c).remove_edge(q.source, q.target)) {
      out.direct_paths.push_back(Path{c, {q.source, q.target}});
    }
  }
  return out;
}

UniGraph remove_nodes(const UniGraph& g, std::span<const NodeId> drop) {
  UniGraph out = g;
  for (NodeId v : drop) {
    if (v >= 0 && static_cast<std::size_t>(v) < g.node_count()) out.isolate(v);
  }
  return out;
}

ColorGraph remove_nodes(const ColorGraph& g, std::span<const NodeId> drop) {
  ColorGraph out = g;
  for (Color c = 1; c <= g.color_count(); ++c) out.mutable_layer(c) = remove_nodes(g.layer(c), drop);
  return out;
}

UniGraph prune_by_distance(const UniGraph& g, const Query& q, int l, std::span<const char> blocked) {
  // Depth-truncated searches keep this local to the l-ball around s and t.
  const auto from_s = bfs_tree(g, q.source, l, blocked);
  const auto dt = bfs_distances(g, q.target, l, blocked);
  const auto& ds = from_s.dist;
  auto keep = [&](NodeId v) {
    const auto i = static_cast<std::size_t>(v);
    return ds[i] != kUnreachable && dt[i] != kUnreachable && ds[i] + dt[i] <= l;
  };
  UniGraph out(g.node_count());
  if (!keep(q.source)) return out;
  for (NodeId u : from_s.order) {
    if (!keep(u)) continue;
    for (NodeId v : g.neighbors(u)) {
      if (u < v && keep(v)) out.add_edge(u, v);
    }
  }
  return out;
}

ColorGraph prune_by_distance(const ColorGraph& g, const Query& q, int l) {
  check_query(g.node_count(), q);
  ColorGraph out = g;
  for (Color c = 1; c <= g.color_count(); ++c) out.mutable_layer(c) = prune_by_distance(g.layer(c), q, l);
  return out;
}

UniGraph color_subgraph(const ColorGraph& g, Color color) { return g.layer(color); }

// ---------------------------------------------------------------------------

std::string_view to_string(Violation v) {
  switch (v) {
    case Violation::kNone: return "none";
    case Violation::kEmptyPath: return "empty-path";
    case Violation::kEndpoints: return "endpoints";
    case Violation::kNotSimple: return "not-simple";
    case Violation::kBadColor: return "bad-color";
    case Violation::kMissingEdge: return "missing-edge";
    case Violation::kLengthBound: return "length-bound";
    case Violation::kNotDisjoint: return "disjointness";
  }
  return "unknown";
}

ValidationReport validate_solution(const ColorGraph& g, const Query& q, const PathSet& paths) {
  auto fail = [](Violation v, std::size_t idx, std::string msg) {
    return ValidationReport{v, idx, "path " + std::to_string(idx) + ": " + std::move(msg)};
  };
  const auto n = static_cast<NodeId>(g.node_count());
  for (std::size_t i = 0; i < paths.size(); ++i) {
    const Path& p = paths[i];
    if (p.nodes.size() < 2) return fail(Violation::kEmptyPath, i, "fewer than two nodes");
    if (p.nodes.front() != q.source || p.nodes.back() != q.target) {
      return fail(Violation::kEndpoints, i, "does not run from source to target");
    }
    std::unordered_set<NodeId> seen;
    for (NodeId v : p.nodes) {
      if (v < 0 || v >= n) return fail(Violation::kNotSimple, i, "node id out of range");
      if (!seen.insert(v).second) return fail(Violation::kNotSimple, i, "repeats node " + std::to_string(v));
    }
    if (p.color < 1 || p.color > g.color_count()) {
      return fail(Violation::kBadColor, i, "color " + std::to_string(p.color) + " out of range");
    }
    for (std::size_t k = 0; k + 1 < p.nodes.size(); ++k) {
      if (!g.has_edge(p.nodes[k], p.nodes[k + 1], p.color)) {
        return fail(Violation::kMissingEdge, i,
                    "no edge (" + std::to_string(p.nodes[k]) + "," + std::to_string(p.nodes[k + 1]) +
                        ") of color " + std::to_string(p.color));
      }
    }
    if (q.length_bound && p.length() > static_cast<std::size_t>(*q.length_bound)) {
      return fail(Violation::kLengthBound, i, "length " + std::to_string(p.length()) + " exceeds bound");
    }
  }
  std::unordered_set<NodeId> used;
  for (std::size_t i = 0; i < paths.size(); ++i) {
    for (NodeId v : paths[i].internal()) {
      if (!used.insert(v).second) {
        return fail(Violation::kNotDisjoint, i, "internal node " + std::to_string(v) + " shared");
      }
    }
  }
  return {};
}

}  // namespace cdp
