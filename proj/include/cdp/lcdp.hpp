#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "cdp/graph.hpp"

namespace cdp {

using Rational = boost::multiprecision::cpp_rational;

inline constexpr std::size_t kDefaultPathCap = 1'000'000;

// ---------------------------------------------------------------------------
// Path enumeration

/// Every simple uni-color st-path with at most l edges, each exactly once.
/// Order: by color, then depth-first in ascending neighbour order.
/// Throws RefusalError once more than `cap` paths exist.
std::vector<Path> enumerate_paths(const ColorGraph& g, const Query& q, int l,
                                  std::size_t cap = kDefaultPathCap);

/// Shortest st-path with at most `max_len` edges avoiding `blocked` nodes.
std::optional<std::vector<NodeId>> shortest_path(const UniGraph& g, const Query& q, int max_len,
                                                 std::span<const char> blocked = {});

// ---------------------------------------------------------------------------
// l <= 3

/// Exact for l = 3 (also accepts l = 1, 2). Length-2 paths through common
/// neighbours of s and t are committed first; length-3 paths come from a
/// maximum matching on the pair graph.
PathSet lcdp3_exact(const ColorGraph& g, const Query& q, int max_len = 3);

// ---------------------------------------------------------------------------
// Set packing local search

struct PackedSet {
  std::vector<NodeId> nodes;  // sorted internal nodes of `path`
  Path path;
};

struct PackingInstance {
  std::vector<NodeId> universe;
  std::vector<PackedSet> sets;
  int k = 0;           // maximum set size
  int swap_param = 1;  // up to swap_param members may be traded for one more
};

/// Builds the packing view of `paths` (paths without internal nodes are
/// rejected). The universe is V \ {s,t}.
PackingInstance make_packing_instance(const ColorGraph& g, const Query& q, std::span<const Path> paths,
                                      int k, int swap_param);

/// Local search: while some i+1 pairwise disjoint sets outside the solution
/// meet at most i solution members (i <= swap_param), swap them in.
/// Returns indices into inst.sets in solution order. `initial` must be a
/// disjoint selection.
std::vector<std::size_t> set_packing_local_search(const PackingInstance& inst,
                                                  std::span<const std::size_t> initial = {});

/// Worst-case OPT/APP of the local search with sets of size k and swap
/// depth s. For k = 2 the closed form is 0/0 and its limit in k is used.
Rational hs_ratio(int k, int s);

/// Smallest s with hs_ratio(k, s) <= k/2 + eps. Throws if none is found
/// within `max_swap`.
int choose_swap_param(int k, const Rational& eps, int max_swap = 64);

/// (l-1)/2 + eps approximation for l >= 3 via enumeration and local search.
PathSet lcdp_local_search(const ColorGraph& g, const Query& q, int l, const Rational& eps,
                          std::size_t cap = kDefaultPathCap);

/// Same search with an explicit swap depth.
PathSet lcdp_local_search_swap(const ColorGraph& g, const Query& q, int l, int swap_param,
                               std::size_t cap = kDefaultPathCap);

// ---------------------------------------------------------------------------
// l = 4

/// min(kappa^l(s,t), cap) by pruning and bounded enumeration.
int kappa_l_capped(const UniGraph& g, const Query& q, int l, int cap = 2);

/// Nodes lying on every st-path of length <= l. Sorted.
std::vector<NodeId> length_bounded_cut_nodes(const UniGraph& g, const Query& q, int l);

/// True iff there are internally disjoint st-paths of length <= 4, one in
/// gi and one in gj. Inputs are expected distance-pruned with a single
/// disjoint short path each.
bool test_pair(const UniGraph& gi, const UniGraph& gj, const Query& q);

/// True iff kappa^4(s,t) >= 2.
bool two_path_test(const ColorGraph& g, const Query& q);

/// Two internally disjoint uni-color st-paths of length <= 4 avoiding the
/// blocked nodes, if any exist.
std::optional<std::pair<Path, Path>> find_two_paths(const ColorGraph& g, const Query& q,
                                                     std::span<const char> blocked = {});

/// Local search with swap depth 1 driven by graph queries; 2 * |result|
/// is at least the optimum.
PathSet lcdp4_two_approx(const ColorGraph& g, const Query& q);

/// True if `solution` admits a 1-for-0 or 2-for-1 improvement.
bool lcdp4_has_improvement(const ColorGraph& g, const Query& q, const PathSet& solution);

}  // namespace cdp
