#include <doctest.h>

#include <random>

#include "cdp/instances.hpp"
#include "cdp/lcdp.hpp"
#include "cdp/oracle.hpp"
#include "fixtures.hpp"

using namespace cdp;

namespace {

std::size_t parse_error_line(std::string_view text) {
  try {
    parse_graph(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

}  // namespace

TEST_CASE("parse FIX-A") {
  const ColorGraph g = parse_graph(fx::kFixAText);
  CHECK(g == fx::fix_a());
  CHECK(g.node_count() == 4);
  CHECK(g.color_count() == 2);
  CHECK(g.edge_count() == 4);
}

TEST_CASE("parse edgeless header") {
  const ColorGraph g = parse_graph("p cdp 2 1");
  CHECK(g.node_count() == 2);
  CHECK(g.color_count() == 1);
  CHECK(g.edge_count() == 0);
}

TEST_CASE("parse errors carry line numbers") {
  CHECK(parse_error_line("p cdp 4 2\ne 0 5 1\n") == 2);
  CHECK(parse_error_line("p cdp 4 2\ne 0 1 3\n") == 2);
  CHECK(parse_error_line("p cdp 4 2\ne 0 1 0\n") == 2);
  CHECK(parse_error_line("p cdp 4 2\n# fine\ne 2 2 1\n") == 3);
  CHECK(parse_error_line("p cdp 4 2\ne 0 1 1\ne 1 0 1\n") == 3);
  CHECK(parse_error_line("e 0 1 1\n") == 1);
  CHECK(parse_error_line("p cdp 4 2\np cdp 4 2\n") == 2);
  CHECK(parse_error_line("p cdp 4 2\ne 0 x 1\n") == 2);
  CHECK(parse_error_line("p cdp 4 2\nz\n") == 2);
  CHECK(parse_error_line("") > 0);
}

TEST_CASE("parse accepts comments, parallel colors and a query line") {
  const auto file = parse_graph_file("# hi\np cdp 3 2\ne 0 1 1\ne 0 1 2\nq 2 1\n");
  CHECK(file.graph.edge_count() == 2);
  REQUIRE(file.query);
  CHECK(file.query->source == 2);
  CHECK(file.query->target == 1);
}

TEST_CASE("serialization is canonical and round-trips") {
  const auto g = parse_graph("p cdp 4 2\ne 3 1 2\ne 2 1 1\ne 0 3 2\ne 2 0 1\n");
  CHECK(serialize_graph(g) == "p cdp 4 2\ne 0 2 1\ne 1 2 1\ne 0 3 2\ne 1 3 2\n");
  CHECK(serialize_graph(parse_graph(fx::kFixAText)) == serialize_graph(g));
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto r = random_color_graph(9, 3, 0.35, seed);
    const auto text = serialize_graph(r, Query{2, 5, std::nullopt});
    const auto back = parse_graph_file(text);
    CHECK(back.graph == r);
    CHECK(back.query->source == 2);
    CHECK(serialize_graph(back.graph, back.query) == text);
  }
}

TEST_CASE("strip_st_edges") {
  auto g = fx::make(2, 2, {{0, 1, 1}, {0, 1, 2}});
  auto [stripped, direct] = strip_st_edges(g, fx::st());
  CHECK(stripped.edge_count() == 0);
  REQUIRE(direct.size() == 2);
  CHECK(direct[0] == Path{1, {0, 1}});
  CHECK(direct[1] == Path{2, {0, 1}});

  auto a = strip_st_edges(fx::fix_a(), fx::st());
  CHECK(a.graph == fx::fix_a());
  CHECK(a.direct_paths.empty());

  // (s,t) in color 1 on top of FIX-A; oracle value 3, frozen.
  auto with_direct = fx::fix_a();
  with_direct.add_edge(0, 1, 1);
  CHECK(brute_force_max_disjoint(with_direct, fx::st()).size() == 3);
}

TEST_CASE("remove_nodes") {
  const auto g = remove_nodes(fx::fix_a(), std::vector<NodeId>{2});
  CHECK(g.layer(1).edge_count() == 0);
  CHECK(g.layer(2).edge_count() == 2);
  CHECK(g.node_count() == 4);
  CHECK(remove_nodes(fx::fix_a(), std::vector<NodeId>{}) == fx::fix_a());

  const auto tight = tight_example(3);
  const auto dropped = remove_nodes(tight.graph, std::vector<NodeId>{2, 4, 6});
  CHECK(brute_force_max_disjoint(dropped, tight.query).empty());

  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto r = random_color_graph(10, 2, 0.4, seed);
    const std::vector<NodeId> a{2, 5};
    const std::vector<NodeId> b{5, 7, 8};
    const std::vector<NodeId> both{2, 5, 7, 8};
    CHECK(remove_nodes(r, both) == remove_nodes(remove_nodes(r, a), b));
  }
}

TEST_CASE("prune_by_distance") {
  CHECK(prune_by_distance(fx::fix_a(), fx::st(), 4) == fx::fix_a());
  CHECK(prune_by_distance(fx::chain(4), fx::st(), 4).edge_count() == 0);
  CHECK(prune_by_distance(fx::chain(4), fx::st(), 5) == fx::chain(4));

  auto dangling = fx::make(5, 2, {{0, 2, 1}, {2, 1, 1}, {0, 3, 2}, {3, 1, 2}});
  auto with_x = fx::make(5, 2, {{0, 2, 1}, {2, 1, 1}, {0, 3, 2}, {3, 1, 2}, {0, 4, 1}});
  const auto pruned = prune_by_distance(with_x, fx::st(), 3);
  CHECK(pruned == dangling);
}

TEST_CASE("prune_by_distance preserves short paths and is idempotent") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 4 + rng() % 7;
    const int c = 1 + static_cast<int>(rng() % 3);
    const auto g = random_color_graph(n, c, trial % 2 ? 0.4 : 0.2, rng());
    for (int l = 1; l <= 5; ++l) {
      const auto once = prune_by_distance(g, fx::st(), l);
      CHECK(prune_by_distance(once, fx::st(), l) == once);
      CHECK(fx::naive_paths(g, fx::st(), l) == fx::naive_paths(once, fx::st(), l));
    }
  }
}

TEST_CASE("color_subgraph") {
  CHECK(color_subgraph(fx::fix_a(), 1) == fx::uni(4, {{0, 2}, {2, 1}}));
  CHECK(color_subgraph(fx::fix_a(), 2) == fx::uni(4, {{0, 3}, {3, 1}}));
  CHECK(color_subgraph(ColorGraph(3, 1), 1).edge_count() == 0);
  CHECK_THROWS_AS(color_subgraph(fx::fix_a(), 3), std::out_of_range);
}

TEST_CASE("validate_solution") {
  const auto g = fx::fix_a();
  const PathSet both{{1, {0, 2, 1}}, {2, {0, 3, 1}}};
  CHECK(validate_solution(g, fx::st(), both).ok());

  auto shared = fx::make(4, 2, {{0, 2, 1}, {2, 1, 1}, {0, 2, 2}, {2, 1, 2}});
  auto rep = validate_solution(shared, fx::st(), {{1, {0, 2, 1}}, {2, {0, 2, 1}}});
  CHECK(rep.violation == Violation::kNotDisjoint);
  CHECK(to_string(rep.violation) == "disjointness");

  rep = validate_solution(g, fx::st(), {{2, {0, 2, 1}}});
  CHECK(rep.violation == Violation::kMissingEdge);

  CHECK(validate_solution(g, fx::st(), {{1, {}}}).violation == Violation::kEmptyPath);
  CHECK(validate_solution(g, fx::st(), {{1, {0, 2}}}).violation == Violation::kEndpoints);
  CHECK(validate_solution(g, fx::st(), {{3, {0, 2, 1}}}).violation == Violation::kBadColor);
  CHECK(validate_solution(g, fx::st(1), both).violation == Violation::kLengthBound);
  const auto loop = fx::make(4, 1, {{0, 2, 1}, {2, 3, 1}, {3, 0, 1}, {2, 1, 1}});
  CHECK(validate_solution(loop, fx::st(), {{1, {0, 2, 3, 0, 2, 1}}}).violation == Violation::kNotSimple);
  CHECK(validate_solution(g, fx::st(), {}).ok());
}

TEST_CASE("check_query") {
  CHECK_THROWS_AS(check_query(3, Query{0, 0, std::nullopt}), std::invalid_argument);
  CHECK_THROWS_AS(check_query(3, Query{0, 3, std::nullopt}), std::invalid_argument);
  CHECK_NOTHROW(check_query(3, Query{2, 0, std::nullopt}));
}
