#include <doctest.h>

#include <random>

#include "cdp/flow.hpp"
#include "cdp/greedy.hpp"
#include "cdp/instances.hpp"
#include "cdp/oracle.hpp"
#include "fixtures.hpp"

using namespace cdp;

namespace {

GreedyOptions bold_override(const TightExample& ex) {
  GreedyOptions o;
  o.witness_override = [bold = ex.bold](int round, Color color, const UniGraph&, const Query&) -> std::optional<PathSet> {
    if (round == 0 && color == 1) return PathSet{bold};
    return std::nullopt;
  };
  return o;
}

}  // namespace

TEST_CASE("greedy examples") {
  CHECK(greedy_c_approx(fx::fix_a(), fx::st()).size() == 2);
  CHECK(greedy_c_approx(fx::fix_b(), fx::st()).empty());

  const auto ex = tight_example(3);
  const auto forced = greedy_c_approx(ex.graph, ex.query, bold_override(ex));
  CHECK(forced.size() == 1);
  CHECK(forced[0] == ex.bold);
  CHECK(brute_force_max_disjoint(ex.graph, ex.query).size() == 3);
  // Without steering, the BFS witness takes the short horizontal path.
  CHECK(greedy_c_approx(ex.graph, ex.query).size() == 3);
}

TEST_CASE("tie-break policies") {
  CHECK(parse_tie_break("lowest-color") == TieBreak::kLowestColor);
  CHECK(parse_tie_break("adversarial-seeded") == TieBreak::kAdversarialSeeded);
  CHECK_FALSE(parse_tie_break("random"));
  CHECK(to_string(TieBreak::kHighestColor) == "highest-color");

  GreedyOptions high;
  high.tie_break = TieBreak::kHighestColor;
  const auto paths = greedy_c_approx(fx::fix_a(), fx::st(), high);
  REQUIRE(paths.size() == 2);
  CHECK(paths[0].color == 2);
}

TEST_CASE("greedy guarantees on random instances") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 3 + rng() % 8;
    const int c = 1 + static_cast<int>(rng() % 3);
    const auto g = random_color_graph(n, c, trial % 2 ? 0.4 : 0.2, rng());
    const auto opt = brute_force_max_disjoint(g, fx::st()).size();
    const auto stripped = strip_st_edges(g, fx::st());
    std::size_t best = 0;
    for (Color i = 1; i <= c; ++i) {
      best = std::max(best, static_cast<std::size_t>(vertex_connectivity(stripped.graph.layer(i), fx::st()).kappa));
    }
    for (auto policy : {TieBreak::kLowestColor, TieBreak::kHighestColor, TieBreak::kAdversarialSeeded}) {
      GreedyOptions o;
      o.tie_break = policy;
      o.seed = static_cast<std::uint64_t>(trial);
      const auto app = greedy_c_approx(g, fx::st(), o);
      CHECK(validate_solution(g, fx::st(), app).ok());
      CHECK(static_cast<std::size_t>(c) * app.size() >= opt);
      CHECK(app.size() >= best + stripped.direct_paths.size());
    }
  }
}
