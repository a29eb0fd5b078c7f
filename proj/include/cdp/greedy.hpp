#pragma once

#include <cstdint>
#include <functional>
#include <optional>

#include "cdp/flow.hpp"
#include "cdp/graph.hpp"

namespace cdp {

enum class TieBreak { kLowestColor, kHighestColor, kAdversarialSeeded };

std::optional<TieBreak> parse_tie_break(std::string_view name);
std::string_view to_string(TieBreak t);

/// Test hook: may replace the flow witness of `color` in a given round
/// (0-based). Returned paths must be disjoint st-paths of the current layer.
using WitnessOverride =
    std::function<std::optional<PathSet>(int round, Color color, const UniGraph& layer, const Query& q)>;

struct GreedyOptions {
  TieBreak tie_break = TieBreak::kLowestColor;
  std::uint64_t seed = 0;
  WitnessOverride witness_override;
};

/// Repeatedly commits every disjoint path of the color with largest
/// connectivity, then deletes their internal nodes. A c-approximation.
PathSet greedy_c_approx(const ColorGraph& g, const Query& q, const GreedyOptions& options = {});

}  // namespace cdp
