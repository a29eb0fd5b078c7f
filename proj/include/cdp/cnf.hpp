#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace cdp {

/// Literals are signed 1-based variable indices.
struct CnfFormula {
  int variable_count = 0;
  std::vector<std::vector<int>> clauses;

  friend bool operator==(const CnfFormula&, const CnfFormula&) = default;
};

/// DIMACS: `p cnf <vars> <clauses>`, then clauses as signed ints ending in 0.
/// `c` lines are comments. Throws ParseError.
CnfFormula parse_dimacs(std::string_view text);
std::string serialize_dimacs(const CnfFormula& f);

}  // namespace cdp
