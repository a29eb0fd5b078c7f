#include <doctest.h>

#include <random>
#include <set>

#include "cdp/exact.hpp"
#include "cdp/flow.hpp"
#include "cdp/instances.hpp"
#include "cdp/oracle.hpp"
#include "fixtures.hpp"

using namespace cdp;

namespace {

std::vector<std::vector<Color>> all_colorings(std::size_t count, int c) {
  GrayColorings gray(count, [&] {
    std::vector<NodeId> free;
    for (std::size_t i = 0; i < count; ++i) free.push_back(static_cast<NodeId>(i));
    return free;
  }(), c);
  std::vector<std::vector<Color>> out{gray.current().color};
  while (gray.advance()) out.push_back(gray.current().color);
  return out;
}

}  // namespace

TEST_CASE("induced_by_coloring") {
  NodeColoring d{{0, 0, 1}};
  CHECK(induced_by_coloring(fx::fix_b(), fx::st(), d) == fx::uni(3, {{0, 2}}));
  d.color[2] = 2;
  CHECK(induced_by_coloring(fx::fix_b(), fx::st(), d) == fx::uni(3, {{2, 1}}));

  const NodeColoring ab{{0, 0, 1, 2}};
  const auto g = induced_by_coloring(fx::fix_a(), fx::st(), ab);
  CHECK(g.edge_count() == 4);
  CHECK(vertex_connectivity(g, fx::st()).kappa == 2);
}

TEST_CASE("gray_colorings examples") {
  GrayColorings one(3, {2}, 3);
  std::vector<Color> seen{one.current().color[2]};
  CHECK_FALSE(one.changed());
  while (one.advance()) {
    CHECK(*one.changed() == 2);
    seen.push_back(one.current().color[2]);
  }
  CHECK(seen == std::vector<Color>{1, 2, 3});

  const auto two = all_colorings(2, 2);
  CHECK(two == std::vector<std::vector<Color>>{{1, 1}, {1, 2}, {2, 2}, {2, 1}});

  GrayColorings none(2, {}, 4);
  CHECK(none.size() == 1);
  CHECK_FALSE(none.advance());
}

TEST_CASE("gray_colorings: complete, distinct, single changes") {
  for (std::size_t k = 0; k <= 5; ++k) {
    for (int c = 1; c <= 4; ++c) {
      std::vector<NodeId> free;
      for (std::size_t i = 0; i < k; ++i) free.push_back(static_cast<NodeId>(2 * i + 1));
      GrayColorings gray(2 * k + 2, free, c);
      std::set<std::vector<Color>> seen{gray.current().color};
      auto prev = gray.current().color;
      while (gray.advance()) {
        const auto& cur = gray.current().color;
        std::size_t diffs = 0;
        for (std::size_t v = 0; v < cur.size(); ++v) diffs += cur[v] != prev[v];
        CHECK(diffs == 1);
        CHECK(cur[static_cast<std::size_t>(*gray.changed())] != prev[static_cast<std::size_t>(*gray.changed())]);
        seen.insert(cur);
        prev = cur;
      }
      CHECK(seen.size() == *coloring_count(k, c));
      CHECK(gray.size() == seen.size());
    }
  }
}

TEST_CASE("gray_colorings over per-node domains") {
  const std::vector<NodeId> free{2, 3, 4};
  const std::vector<std::vector<Color>> domains{{2}, {1, 3}, {1, 2, 3}};
  GrayColorings gray(5, free, domains);
  std::set<std::vector<Color>> seen{gray.current().color};
  CHECK(gray.current().color == std::vector<Color>{0, 0, 2, 1, 1});
  auto prev = gray.current().color;
  while (gray.advance()) {
    const auto& cur = gray.current().color;
    std::size_t diffs = 0;
    for (std::size_t v = 0; v < cur.size(); ++v) diffs += cur[v] != prev[v];
    CHECK(diffs == 1);
    CHECK(cur[2] == 2);
    CHECK(cur[3] != 2);
    seen.insert(cur);
    prev = cur;
  }
  CHECK(seen.size() == 6);
  CHECK(gray.size() == 6);
  CHECK_THROWS_AS(GrayColorings(5, free, {{1}, {}, {1}}), std::invalid_argument);
  CHECK_THROWS_AS(GrayColorings(5, free, domains, 5), RefusalError);
}

TEST_CASE("useful_colors") {
  const std::vector<NodeId> free{2, 3};
  CHECK(useful_colors(fx::fix_a(), free) == std::vector<std::vector<Color>>{{1}, {2}});
  auto g = fx::fix_a();
  g.add_edge(2, 3, 2);
  CHECK(useful_colors(g, free) == std::vector<std::vector<Color>>{{1, 2}, {2}});
  const auto isolated = fx::make(3, 3, {});
  CHECK(useful_colors(isolated, std::vector<NodeId>{2}) == std::vector<std::vector<Color>>{{1}});
}

TEST_CASE("max_cdp_exact on tight examples beyond the full coloring budget") {
  for (int c = 2; c <= 6; ++c) {
    const auto ex = tight_example(c);
    const auto paths = max_cdp_exact(ex.graph, ex.query);
    CHECK(paths.size() == static_cast<std::size_t>(c));
    CHECK(validate_solution(ex.graph, ex.query, paths).ok());
  }
}

TEST_CASE("gray_colorings budget refusal") {
  std::vector<NodeId> free(30);
  for (int i = 0; i < 30; ++i) free[static_cast<std::size_t>(i)] = i;
  CHECK_THROWS_AS(GrayColorings(30, free, 2), RefusalError);
  CHECK_NOTHROW(GrayColorings(30, free, 2, std::uint64_t{1} << 30));
  CHECK_FALSE(coloring_count(200, 3));
}

TEST_CASE("max_cdp_exact examples") {
  CHECK(max_cdp_exact(fx::fix_a(), fx::st()).size() == 2);
  CHECK(max_cdp_exact(fx::fix_b(), fx::st()).empty());
  const auto tight = tight_example(3);
  CHECK(max_cdp_exact(tight.graph, tight.query).size() == 3);
  CHECK(brute_force_max_disjoint(tight.graph, tight.query).size() == 3);

  auto direct = fx::fix_a();
  direct.add_edge(0, 1, 2);
  const auto paths = max_cdp_exact(direct, fx::st());
  CHECK(paths.size() == 3);
  CHECK(validate_solution(direct, fx::st(), paths).ok());
}

TEST_CASE("max_cdp_exact refuses over budget") {
  const auto g = random_color_graph(30, 3, 0.2, 1);
  CHECK_THROWS_AS(max_cdp_exact(g, fx::st()), RefusalError);
}

TEST_CASE("max_cdp_exact: oracle, bounds, modes") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t n = 3 + rng() % 7;
    const int c = 1 + static_cast<int>(rng() % 3);
    const auto g = random_color_graph(n, c, trial % 2 ? 0.4 : 0.2, rng());
    const auto opt = brute_force_max_disjoint(g, fx::st()).size();

    ExactOptions scratch;
    scratch.incremental = false;
    ExactOptions full;
    full.early_exit = false;
    ExactOptions parallel;
    parallel.threads = 3;

    const auto inc = max_cdp_exact(g, fx::st());
    CHECK(inc.size() == opt);
    CHECK(validate_solution(g, fx::st(), inc).ok());
    const auto fresh = max_cdp_exact(g, fx::st(), scratch);
    CHECK(fresh.size() == opt);
    CHECK(validate_solution(g, fx::st(), fresh).ok());
    CHECK(max_cdp_exact(g, fx::st(), full).size() == opt);
    const auto par = max_cdp_exact(g, fx::st(), parallel);
    CHECK(par.size() == opt);
    CHECK(validate_solution(g, fx::st(), par).ok());

    const auto stripped = strip_st_edges(g, fx::st());
    std::size_t sum = 0;
    std::size_t best = 0;
    for (Color i = 1; i <= c; ++i) {
      const auto k = static_cast<std::size_t>(vertex_connectivity(stripped.graph.layer(i), fx::st()).kappa);
      sum += k;
      best = std::max(best, k);
    }
    CHECK(inc.size() <= sum + stripped.direct_paths.size());
    CHECK(inc.size() >= best + stripped.direct_paths.size());
  }
}

TEST_CASE("every G[delta] path maps to a uni-color path") {
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 4 + rng() % 4;
    const int c = 2 + static_cast<int>(rng() % 2);
    const auto g = strip_st_edges(random_color_graph(n, c, 0.45, rng()), fx::st()).graph;
    std::vector<NodeId> free;
    for (std::size_t v = 2; v < n; ++v) free.push_back(static_cast<NodeId>(v));
    GrayColorings gray(n, free, c);
    do {
      const auto& delta = gray.current();
      auto res = vertex_connectivity(induced_by_coloring(g, fx::st(), delta), fx::st());
      for (auto& p : res.witness) p.color = delta.color[static_cast<std::size_t>(p.nodes[1])];
      REQUIRE(validate_solution(g, fx::st(), res.witness).ok());
    } while (gray.advance());
  }
}
