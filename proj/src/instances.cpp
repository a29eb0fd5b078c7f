#include "cdp/instances.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <stdexcept>

namespace cdp {

namespace {

double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::vector<std::vector<int>> dedupe_literals(const CnfFormula& f) {
  std::vector<std::vector<int>> out;
  for (const auto& clause : f.clauses) {
    if (clause.empty()) throw std::invalid_argument("formula contains an empty clause");
    std::vector<int> c;
    for (int lit : clause) {
      if (lit == 0 || std::abs(lit) > f.variable_count) throw std::invalid_argument("literal out of range");
      if (std::find(c.begin(), c.end(), lit) == c.end()) c.push_back(lit);
    }
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace

Instance wrap_mcdp2(const ColorGraph& g, NodeId s1, NodeId t1, NodeId s2, NodeId t2) {
  if (g.color_count() < 2) throw std::invalid_argument("wrap_mcdp2 needs two colors");
  if (s1 == t1 || s2 == t2) throw std::invalid_argument("pair endpoints must differ");
  const NodeId ends[4] = {s1, t1, s2, t2};
  for (NodeId v : ends) {
    if (v < 0 || static_cast<std::size_t>(v) >= g.node_count()) throw std::invalid_argument("endpoint out of range");
  }
  // Later repeats of an endpoint get a fresh duplicate.
  std::vector<NodeId> attach(ends, ends + 4);
  std::vector<NodeId> copies_of;
  auto next = static_cast<NodeId>(g.node_count());
  for (int i = 1; i < 4; ++i) {
    for (int j = 0; j < i; ++j) {
      if (ends[i] == ends[j]) {
        attach[static_cast<std::size_t>(i)] = next++;
        copies_of.push_back(ends[i]);
        break;
      }
    }
  }
  const NodeId s = next++;
  const NodeId t = next++;
  Instance out{ColorGraph(static_cast<std::size_t>(next), g.color_count()), Query{s, t, std::nullopt}};
  for (Color c = 1; c <= g.color_count(); ++c) {
    for (auto [u, v] : g.layer(c).edges()) out.graph.add_edge(u, v, c);
  }
  for (std::size_t k = 0; k < copies_of.size(); ++k) {
    const auto dup = static_cast<NodeId>(g.node_count() + k);
    for (Color c = 1; c <= g.color_count(); ++c) {
      for (NodeId w : g.layer(c).neighbors(copies_of[k])) out.graph.add_edge(dup, w, c);
    }
  }
  out.graph.add_edge(s, attach[0], 1);
  out.graph.add_edge(t, attach[1], 1);
  out.graph.add_edge(s, attach[2], 2);
  out.graph.add_edge(t, attach[3], 2);
  return out;
}

Cdp22Instance sat_to_cdp22(const CnfFormula& f) {
  if (f.clauses.empty() || f.variable_count < 1) throw std::invalid_argument("formula is empty");
  const auto clauses = dedupe_literals(f);
  const auto r = static_cast<std::size_t>(f.variable_count);

  NodeId next = 4;
  std::vector<std::vector<NodeId>> stage(clauses.size());
  std::vector<std::vector<NodeId>> pos(r);
  std::vector<std::vector<NodeId>> neg(r);
  for (std::size_t j = 0; j < clauses.size(); ++j) {
    for (int lit : clauses[j]) {
      const NodeId v = next++;
      stage[j].push_back(v);
      auto& chain = lit > 0 ? pos[static_cast<std::size_t>(lit - 1)] : neg[static_cast<std::size_t>(-lit - 1)];
      chain.push_back(v);
    }
  }
  for (std::size_t i = 0; i < r; ++i) {
    if (pos[i].empty()) pos[i].push_back(next++);
    if (neg[i].empty()) neg[i].push_back(next++);
  }

  ColorGraph g(static_cast<std::size_t>(next), 2);
  std::vector<NodeId> prev{0};
  for (const auto& layer : stage) {
    for (NodeId a : prev) {
      for (NodeId b : layer) g.add_edge(a, b, 1);
    }
    prev = layer;
  }
  for (NodeId a : prev) g.add_edge(a, 1, 1);

  std::vector<NodeId> ends{2};
  for (std::size_t i = 0; i < r; ++i) {
    for (const auto* chain : {&pos[i], &neg[i]}) {
      for (std::size_t k = 0; k + 1 < chain->size(); ++k) g.add_edge((*chain)[k], (*chain)[k + 1], 2);
    }
    for (NodeId a : ends) {
      g.add_edge(a, pos[i].front(), 2);
      g.add_edge(a, neg[i].front(), 2);
    }
    ends = {pos[i].back(), neg[i].back()};
  }
  for (NodeId a : ends) g.add_edge(a, 3, 2);

  auto wrapped = wrap_mcdp2(g, 0, 1, 2, 3);
  Cdp22Instance out;
  out.graph = std::move(wrapped.graph);
  out.query = wrapped.query;
  out.target = 2;
  out.positive_chain = std::move(pos);
  out.negative_chain = std::move(neg);
  return out;
}

NormalizedFormula normalize_pure_literals(const CnfFormula& f) {
  auto clauses = dedupe_literals(f);
  while (true) {
    std::vector<int> sign(static_cast<std::size_t>(f.variable_count) + 1, 0);  // bit 1 positive, bit 2 negative
    for (const auto& c : clauses) {
      for (int lit : c) sign[static_cast<std::size_t>(std::abs(lit))] |= lit > 0 ? 1 : 2;
    }
    std::vector<std::vector<int>> kept;
    for (auto& c : clauses) {
      const bool pure = std::any_of(c.begin(), c.end(), [&](int lit) {
        return sign[static_cast<std::size_t>(std::abs(lit))] != 3;
      });
      if (!pure) kept.push_back(std::move(c));
    }
    const bool changed = kept.size() != clauses.size();
    clauses = std::move(kept);
    if (!changed) break;
  }
  NormalizedFormula out;
  std::map<int, int> renumber;
  for (const auto& c : clauses) {
    for (int lit : c) renumber.emplace(std::abs(lit), 0);
  }
  for (auto& [old, fresh] : renumber) {
    out.original.push_back(old);
    fresh = static_cast<int>(out.original.size());
  }
  out.formula.variable_count = static_cast<int>(out.original.size());
  for (const auto& c : clauses) {
    std::vector<int> mapped;
    for (int lit : c) mapped.push_back(lit > 0 ? renumber[lit] : -renumber[-lit]);
    out.formula.clauses.push_back(std::move(mapped));
  }
  return out;
}

Lcdp4Instance sat3occ_to_lcdp4(const CnfFormula& f) {
  Lcdp4Instance out;
  out.normalized = normalize_pure_literals(f);
  const auto& nf = out.normalized.formula;
  const auto q = nf.clauses.size();
  const auto r = static_cast<std::size_t>(nf.variable_count);

  std::vector<std::vector<NodeId>> pos(r);
  std::vector<std::vector<NodeId>> neg(r);
  NodeId next = 2;
  std::vector<NodeId> clause_in(q);
  std::vector<NodeId> clause_out(q);
  std::vector<std::vector<NodeId>> occurrences(q);
  for (std::size_t j = 0; j < q; ++j) {
    clause_in[j] = next++;
    clause_out[j] = next++;
    for (int lit : nf.clauses[j]) {
      const NodeId v = next++;
      occurrences[j].push_back(v);
      (lit > 0 ? pos : neg)[static_cast<std::size_t>(std::abs(lit) - 1)].push_back(v);
    }
  }
  for (std::size_t i = 0; i < r; ++i) {
    if (pos[i].size() + neg[i].size() > 3 || pos[i].size() > 2 || neg[i].size() > 2) {
      throw std::invalid_argument("variable " + std::to_string(out.normalized.original[i]) +
                                  " occurs too often for the length-4 reduction");
    }
  }
  std::vector<NodeId> head(r);
  for (std::size_t i = 0; i < r; ++i) head[i] = next++;

  ColorGraph g(static_cast<std::size_t>(next), 2);
  for (std::size_t j = 0; j < q; ++j) {
    g.add_edge(0, clause_in[j], 1);
    g.add_edge(clause_out[j], 1, 1);
    for (NodeId v : occurrences[j]) {
      g.add_edge(clause_in[j], v, 1);
      g.add_edge(v, clause_out[j], 1);
    }
  }
  for (std::size_t i = 0; i < r; ++i) {
    g.add_edge(0, head[i], 2);
    for (const auto* chain : {&pos[i], &neg[i]}) {
      NodeId prev = head[i];
      for (NodeId v : *chain) {
        g.add_edge(prev, v, 2);
        prev = v;
      }
      g.add_edge(prev, 1, 2);
    }
  }
  out.graph = std::move(g);
  out.query = Query{0, 1, 4};
  out.target = static_cast<int>(q + r);
  return out;
}

TightExample tight_example(int c) {
  if (c < 2) throw std::invalid_argument("tight_example needs c >= 2");
  const auto n = static_cast<std::size_t>(2 * c + 2);
  TightExample out{ColorGraph(n, c), Query{0, 1, std::nullopt}, Path{1, {0}}};
  for (Color i = 1; i <= c; ++i) {
    out.graph.add_edge(0, 2 * i, i);
    out.graph.add_edge(2 * i, 2 * i + 1, i);
    out.graph.add_edge(2 * i + 1, 1, i);
  }
  for (Color i = 1; i < c; ++i) out.graph.add_edge(2 * i, 2 * i + 2, 1);
  out.graph.add_edge(2 * c, 1, 1);
  for (Color i = 1; i <= c; ++i) out.bold.nodes.push_back(2 * i);
  out.bold.nodes.push_back(1);
  return out;
}

ColorGraph random_color_graph(std::size_t n, std::span<const double> prob, std::uint64_t seed) {
  for (double p : prob) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("edge probability outside [0, 1]");
  }
  ColorGraph g(n, static_cast<int>(prob.size()));
  std::mt19937_64 rng(seed);
  for (std::size_t c = 0; c < prob.size(); ++c) {
    for (std::size_t u = 0; u < n; ++u) {
      for (std::size_t v = u + 1; v < n; ++v) {
        if (unit(rng) < prob[c]) g.add_edge(static_cast<NodeId>(u), static_cast<NodeId>(v), static_cast<Color>(c + 1));
      }
    }
  }
  return g;
}

ColorGraph random_color_graph(std::size_t n, int c, double prob, std::uint64_t seed) {
  const std::vector<double> probs(static_cast<std::size_t>(c), prob);
  return random_color_graph(n, probs, seed);
}

ColorGraph random_sparse_color_graph(std::size_t n, int c, std::size_t edges_per_color, std::uint64_t seed) {
  if (n < 2 || edges_per_color > n * (n - 1) / 4) throw std::invalid_argument("too many edges requested");
  ColorGraph g(n, c);
  std::mt19937_64 rng(seed);
  for (Color color = 1; color <= c; ++color) {
    UniGraph& layer = g.mutable_layer(color);
    std::size_t added = 0;
    while (added < edges_per_color) {
      const auto u = static_cast<NodeId>(rng() % n);
      const auto v = static_cast<NodeId>(rng() % n);
      if (u != v && layer.add_edge(u, v)) ++added;
    }
  }
  return g;
}

}  // namespace cdp
