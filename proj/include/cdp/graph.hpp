#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cdp {

using NodeId = std::int32_t;
/// Colors are 1-based; 0 is reserved as "no color" / wildcard.
using Color = std::int32_t;

inline constexpr NodeId kNoNode = -1;
inline constexpr int kUnreachable = std::numeric_limits<int>::max();

/// Thrown on malformed graph / CNF input.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Thrown when an exponential budget or enumeration cap would be exceeded.
class RefusalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Simple undirected graph on dense ids 0..n-1. Adjacency lists are kept
/// sorted, which fixes iteration order for every algorithm built on top.
class UniGraph {
 public:
  UniGraph() = default;
  explicit UniGraph(std::size_t node_count) : adj_(node_count) {}

  std::size_t node_count() const { return adj_.size(); }
  std::size_t edge_count() const { return edges_; }

  std::span<const NodeId> neighbors(NodeId v) const { return adj_[static_cast<std::size_t>(v)]; }
  std::size_t degree(NodeId v) const { return adj_[static_cast<std::size_t>(v)].size(); }
  bool has_edge(NodeId u, NodeId v) const;

  /// Returns false when the edge was already present.
  bool add_edge(NodeId u, NodeId v);
  bool remove_edge(NodeId u, NodeId v);
  /// Drops every edge incident to v; v stays addressable.
  void isolate(NodeId v);

  std::vector<std::pair<NodeId, NodeId>> edges() const;

  friend bool operator==(const UniGraph&, const UniGraph&) = default;

 private:
  std::vector<std::vector<NodeId>> adj_;
  std::size_t edges_ = 0;
};

/// Undirected multi-relation graph: one edge set per color 1..c.
class ColorGraph {
 public:
  ColorGraph() = default;
  ColorGraph(std::size_t node_count, int color_count);

  std::size_t node_count() const { return nodes_; }
  int color_count() const { return static_cast<int>(layers_.size()); }
  /// Total edge count over all colors.
  std::size_t edge_count() const;

  /// Throws std::invalid_argument on out-of-range ids/colors, self-loops and
  /// duplicates within one color.
  void add_edge(NodeId u, NodeId v, Color color);
  bool has_edge(NodeId u, NodeId v, Color color) const;

  const UniGraph& layer(Color color) const;
  UniGraph& mutable_layer(Color color);

  friend bool operator==(const ColorGraph&, const ColorGraph&) = default;

 private:
  std::size_t nodes_ = 0;
  std::vector<UniGraph> layers_;
};

struct Query {
  NodeId source = 0;
  NodeId target = 1;
  std::optional<int> length_bound;
};

/// Throws std::invalid_argument unless s != t and both are in range.
void check_query(std::size_t node_count, const Query& q);

struct Path {
  Color color = 0;
  std::vector<NodeId> nodes;

  std::size_t length() const { return nodes.empty() ? 0 : nodes.size() - 1; }
  std::span<const NodeId> internal() const {
    return nodes.size() < 2 ? std::span<const NodeId>{}
                            : std::span<const NodeId>(nodes).subspan(1, nodes.size() - 2);
  }
  friend bool operator==(const Path&, const Path&) = default;
};

using PathSet = std::vector<Path>;

// ---------------------------------------------------------------------------
// Text format:
//   # comment
//   p cdp <n> <c>
//   e <u> <v> <color>
//   q <s> <t>          (optional default query)

struct GraphFile {
  ColorGraph graph;
  std::optional<Query> query;
};

GraphFile parse_graph_file(std::string_view text);
ColorGraph parse_graph(std::string_view text);
/// Canonical form: edges ordered by (color, min(u,v), max(u,v)).
std::string serialize_graph(const ColorGraph& g, const std::optional<Query>& q = std::nullopt);

// ---------------------------------------------------------------------------
// Graph surgery. All functions return new values; inputs are untouched.

struct StrippedGraph {
  ColorGraph graph;
  PathSet direct_paths;  // one [s, t] path per color that had the edge
};
StrippedGraph strip_st_edges(const ColorGraph& g, const Query& q);

/// Induced subgraph on V \ drop with ids preserved.
ColorGraph remove_nodes(const ColorGraph& g, std::span<const NodeId> drop);
UniGraph remove_nodes(const UniGraph& g, std::span<const NodeId> drop);

/// Per color, drops every edge at a node v with d_i(s,v) + d_i(v,t) > l.
ColorGraph prune_by_distance(const ColorGraph& g, const Query& q, int l);
/// Single-layer form; nodes flagged in `blocked` are treated as deleted.
UniGraph prune_by_distance(const UniGraph& g, const Query& q, int l, std::span<const char> blocked = {});

UniGraph color_subgraph(const ColorGraph& g, Color color);

// ---------------------------------------------------------------------------

enum class Violation {
  kNone,
  kEmptyPath,
  kEndpoints,
  kNotSimple,
  kBadColor,
  kMissingEdge,
  kLengthBound,
  kNotDisjoint,
};

struct ValidationReport {
  Violation violation = Violation::kNone;
  std::size_t path_index = 0;
  std::string message;

  bool ok() const { return violation == Violation::kNone; }
  explicit operator bool() const { return ok(); }
};

std::string_view to_string(Violation v);

/// Checks every path against g and q, then pairwise internal disjointness.
/// Reports the first violated rule.
ValidationReport validate_solution(const ColorGraph& g, const Query& q, const PathSet& paths);

}  // namespace cdp
