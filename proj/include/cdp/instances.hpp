#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "cdp/cnf.hpp"
#include "cdp/graph.hpp"

namespace cdp {

struct Instance {
  ColorGraph graph;
  Query query;
};

/// Generated reduction instance; `target` is the path count that holds
/// exactly when the formula is satisfiable.
struct ReductionInstance {
  ColorGraph graph;
  Query query;
  int target = 0;
};

/// Two-pair instance turned single-pair: new nodes s, t joined to s1, t1 in
/// color 1 and to s2, t2 in color 2. Coinciding endpoints are split by a
/// duplicate node carrying the same edges.
Instance wrap_mcdp2(const ColorGraph& g, NodeId s1, NodeId t1, NodeId s2, NodeId t2);

struct Cdp22Instance : ReductionInstance {
  NodeId s1 = 0;
  NodeId t1 = 1;
  NodeId s2 = 2;
  NodeId t2 = 3;
  /// Per variable, the color-2 chain of each literal's occurrence nodes
  /// (a single dummy node when the literal never occurs).
  std::vector<std::vector<NodeId>> positive_chain;
  std::vector<std::vector<NodeId>> negative_chain;
};

/// Color 1: stage graph over clause occurrences between s1 and t1.
/// Color 2: literal chains between s2 and t2 joined by 2x2 switches.
/// Target 2. Rejects empty formulas and empty clauses.
Cdp22Instance sat_to_cdp22(const CnfFormula& f);

/// Drops clauses satisfied by pure literals until none remain, then drops
/// variables that no longer occur and renumbers the rest.
struct NormalizedFormula {
  CnfFormula formula;
  std::vector<int> original;  // new variable i+1 came from original[i]
};
NormalizedFormula normalize_pure_literals(const CnfFormula& f);

struct Lcdp4Instance : ReductionInstance {
  NormalizedFormula normalized;
};

/// Two-color gadget whose st-paths all have length <= 4; target is q + r of
/// the normalized formula. Rejects variables with more than three
/// occurrences after normalization.
Lcdp4Instance sat3occ_to_lcdp4(const CnfFormula& f);

struct TightExample {
  ColorGraph graph;
  Query query;
  Path bold;  // the color-1 path meeting every horizontal path
};

/// s = 0, t = 1, u_i = 2i, v_i = 2i + 1 for i = 1..c.
TightExample tight_example(int c);

/// Each unordered pair gets a color-i edge with probability prob[i-1].
ColorGraph random_color_graph(std::size_t n, std::span<const double> prob, std::uint64_t seed);
ColorGraph random_color_graph(std::size_t n, int c, double prob, std::uint64_t seed);

/// `edges_per_color` distinct random edges in every color.
ColorGraph random_sparse_color_graph(std::size_t n, int c, std::size_t edges_per_color, std::uint64_t seed);

}  // namespace cdp
