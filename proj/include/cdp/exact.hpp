#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cdp/graph.hpp"

namespace cdp {

/// delta : V \ {s,t} -> {1..c}, stored densely by node id. Entries for s and
/// t hold 0, which matches every color.
struct NodeColoring {
  std::vector<Color> color;

  bool matches(NodeId v, Color c) const {
    const Color mine = color[static_cast<std::size_t>(v)];
    return mine == 0 || mine == c;
  }
  friend bool operator==(const NodeColoring&, const NodeColoring&) = default;
};

/// G[delta]: an edge (u,v) of color i survives iff both endpoints are
/// colored i (s, t match anything). Colors are erased.
UniGraph induced_by_coloring(const ColorGraph& g, const Query& q, const NodeColoring& coloring);

/// Reflected mixed-radix Gray code over the colorings of `free_nodes`.
/// The last free node changes fastest; the sequence starts at each node's
/// first allowed color.
class GrayColorings {
 public:
  /// Every free node ranges over 1..color_count. Refuses (RefusalError) when
  /// c^|free_nodes| exceeds `budget`.
  GrayColorings(std::size_t node_count, std::vector<NodeId> free_nodes, int color_count,
                std::uint64_t budget = kDefaultBudget);
  /// domains[k] lists the colors free_nodes[k] may take, non-empty.
  GrayColorings(std::size_t node_count, std::vector<NodeId> free_nodes, std::vector<std::vector<Color>> domains,
                std::uint64_t budget = kDefaultBudget);

  static constexpr std::uint64_t kDefaultBudget = std::uint64_t{1} << 24;

  const NodeColoring& current() const { return coloring_; }
  /// Node changed by the last advance(); empty for the first coloring.
  std::optional<NodeId> changed() const { return changed_; }
  /// Moves to the next coloring; false once the sequence is exhausted.
  bool advance();
  std::uint64_t size() const { return total_; }

 private:
  std::vector<NodeId> free_;
  std::vector<std::vector<Color>> domains_;
  NodeColoring coloring_;
  std::vector<int> digit_;  // 0-based digit per free position, fastest last
  std::vector<int> dir_;
  std::optional<NodeId> changed_;
  std::uint64_t total_ = 1;
  std::uint64_t emitted_ = 1;
};

/// Number of colorings c^k, or nullopt if it does not fit in 64 bits.
std::optional<std::uint64_t> coloring_count(std::size_t free_nodes, int color_count);

/// Colors worth trying at each free node: those of its incident edges. A
/// node with no edges gets {1}. Any other color isolates the node in every
/// layer, which never beats an incident color.
std::vector<std::vector<Color>> useful_colors(const ColorGraph& g, std::span<const NodeId> free_nodes);

struct ExactOptions {
  std::uint64_t budget = GrayColorings::kDefaultBudget;
  /// Reuse flow across Gray steps instead of solving each coloring afresh.
  bool incremental = true;
  /// >1 splits the colorings by the first free node's color. The optimum is
  /// the same; the witness may differ from the sequential one.
  int threads = 1;
  /// Stop once a coloring reaches a proven upper bound.
  bool early_exit = true;
};

/// Maximum number of internally disjoint uni-color st-paths, by maximising
/// st-connectivity of G[delta] over all node colorings. Only the colorings
/// allowed by useful_colors are visited; the budget applies to their count.
PathSet max_cdp_exact(const ColorGraph& g, const Query& q, const ExactOptions& options = {});

}  // namespace cdp
