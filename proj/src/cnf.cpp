#include "cdp/cnf.hpp"

#include <cctype>
#include <charconv>
#include <cstdlib>
#include <sstream>

#include "cdp/graph.hpp"

namespace cdp {

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

bool to_int(std::string_view tok, long long& out) {
  const auto* end = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(tok.data(), end, out);
  return ec == std::errc{} && ptr == end;
}

}  // namespace

CnfFormula parse_dimacs(std::string_view text) {
  CnfFormula f;
  bool header = false;
  long long declared_clauses = 0;
  std::vector<int> current;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    const auto line = text.substr(start, end - start);
    ++line_no;
    start = end + 1;
    const auto toks = split_ws(line);
    if (toks.empty() || toks[0] == "c" || toks[0][0] == '%') continue;
    if (toks[0] == "p") {
      long long v = 0;
      if (header) throw ParseError(line_no, "duplicate header");
      if (toks.size() != 4 || toks[1] != "cnf" || !to_int(toks[2], v) || !to_int(toks[3], declared_clauses) || v < 0 ||
          declared_clauses < 0 || v > 1'000'000) {
        throw ParseError(line_no, "expected 'p cnf <vars> <clauses>'");
      }
      f.variable_count = static_cast<int>(v);
      header = true;
      continue;
    }
    if (!header) throw ParseError(line_no, "clause before header");
    for (auto tok : toks) {
      long long lit = 0;
      if (!to_int(tok, lit)) throw ParseError(line_no, "bad literal '" + std::string(tok) + "'");
      if (lit == 0) {
        f.clauses.push_back(std::move(current));
        current.clear();
        continue;
      }
      if (std::llabs(lit) > f.variable_count) throw ParseError(line_no, "literal out of range");
      current.push_back(static_cast<int>(lit));
    }
  }
  if (!header) throw ParseError(line_no, "missing header");
  if (!current.empty()) throw ParseError(line_no, "clause not terminated by 0");
  if (static_cast<long long>(f.clauses.size()) != declared_clauses) {
    throw ParseError(line_no, "header declares " + std::to_string(declared_clauses) + " clauses, found " +
                                  std::to_string(f.clauses.size()));
  }
  return f;
}

std::string serialize_dimacs(const CnfFormula& f) {
  std::ostringstream out;
  out << "p cnf " << f.variable_count << ' ' << f.clauses.size() << '\n';
  for (const auto& clause : f.clauses) {
    for (int lit : clause) out << lit << ' ';
    out << "0\n";
  }
  return out.str();
}

}  // namespace cdp
