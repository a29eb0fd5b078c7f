#include "cdp/greedy.hpp"

#include <random>

namespace cdp {

std::optional<TieBreak> parse_tie_break(std::string_view name) {
  if (name == "lowest-color" || name == "lowest") return TieBreak::kLowestColor;
  if (name == "highest-color" || name == "highest") return TieBreak::kHighestColor;
  if (name == "adversarial-seeded" || name == "adversarial") return TieBreak::kAdversarialSeeded;
  return std::nullopt;
}

std::string_view to_string(TieBreak t) {
  switch (t) {
    case TieBreak::kLowestColor: return "lowest-color";
    case TieBreak::kHighestColor: return "highest-color";
    case TieBreak::kAdversarialSeeded: return "adversarial-seeded";
  }
  return "unknown";
}

PathSet greedy_c_approx(const ColorGraph& g, const Query& q, const GreedyOptions& options) {
  auto [graph, answer] = strip_st_edges(g, q);
  std::mt19937_64 rng(options.seed);

  for (int round = 0;; ++round) {
    std::vector<ConnectivityResult> per_color;
    per_color.reserve(static_cast<std::size_t>(graph.color_count()));
    int best = 0;
    for (Color c = 1; c <= graph.color_count(); ++c) {
      per_color.push_back(vertex_connectivity(graph.layer(c), q));
      best = std::max(best, per_color.back().kappa);
    }
    if (best == 0) break;

    std::vector<Color> tied;
    for (Color c = 1; c <= graph.color_count(); ++c) {
      if (per_color[static_cast<std::size_t>(c - 1)].kappa == best) tied.push_back(c);
    }
    Color chosen = tied.front();
    switch (options.tie_break) {
      case TieBreak::kLowestColor: break;
      case TieBreak::kHighestColor: chosen = tied.back(); break;
      case TieBreak::kAdversarialSeeded: chosen = tied[rng() % tied.size()]; break;
    }

    PathSet paths = std::move(per_color[static_cast<std::size_t>(chosen - 1)].witness);
    if (options.witness_override) {
      if (auto forced = options.witness_override(round, chosen, graph.layer(chosen), q)) {
        paths = std::move(*forced);
      }
    }
    if (paths.empty()) break;

    std::vector<NodeId> used;
    for (Path& p : paths) {
      p.color = chosen;
      used.insert(used.end(), p.internal().begin(), p.internal().end());
      answer.push_back(std::move(p));
    }
    graph = remove_nodes(graph, used);
  }
  return answer;
}

}  // namespace cdp
