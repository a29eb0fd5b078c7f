#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "cdp/cnf.hpp"
#include "cdp/graph.hpp"
#include "cdp/lcdp.hpp"

namespace cdp {

/// Exhaustive maximum set of internally disjoint uni-color st-paths,
/// honouring q.length_bound. Refuses (RefusalError) when n > 14 and more
/// than 10^4 paths exist, or when the paths touch more than 64 nodes.
PathSet brute_force_max_disjoint(const ColorGraph& g, const Query& q);

/// Maximum disjoint sub-collection; indices ascending. At most 24 sets.
std::vector<std::size_t> brute_force_set_packing(const PackingInstance& inst);

/// Satisfying assignment (entry i is variable i+1), or nullopt. At most 20
/// variables.
std::optional<std::vector<bool>> brute_force_sat(const CnfFormula& f);

bool satisfies(const CnfFormula& f, const std::vector<bool>& assignment);

}  // namespace cdp
