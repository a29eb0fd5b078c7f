#include "cdp/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <unordered_map>

namespace cdp {

namespace {

constexpr std::size_t kSmallGraph = 14;
constexpr std::size_t kSmallGraphPathCap = 2'000'000;
constexpr std::size_t kPathCap = 10'000;

struct Candidate {
  std::uint64_t mask = 0;
  Path path;
};

/// Plain DFS over simple paths, no pruning beyond the length bound.
class PathCollector {
 public:
  PathCollector(const ColorGraph& g, const Query& q, int bound, std::size_t cap)
      : g_(g), q_(q), bound_(bound), cap_(cap), on_path_(g.node_count(), 0) {}

  void run() {
    for (Color c = 1; c <= g_.color_count(); ++c) {
      color_ = c;
      path_ = {q_.source};
      on_path_[static_cast<std::size_t>(q_.source)] = 1;
      dfs(q_.source);
      on_path_[static_cast<std::size_t>(q_.source)] = 0;
    }
  }

  std::map<std::uint64_t, Path>& by_mask() { return by_mask_; }
  std::vector<NodeId>& universe() { return universe_; }

 private:
  void dfs(NodeId v) {
    if (static_cast<int>(path_.size()) - 1 >= bound_) return;
    for (NodeId w : g_.layer(color_).neighbors(v)) {
      if (on_path_[static_cast<std::size_t>(w)]) continue;
      if (w == q_.target) {
        if (v != q_.source) record();
        continue;
      }
      path_.push_back(w);
      on_path_[static_cast<std::size_t>(w)] = 1;
      dfs(w);
      on_path_[static_cast<std::size_t>(w)] = 0;
      path_.pop_back();
    }
  }

  void record() {
    if (++found_ > cap_) throw RefusalError("oracle: more than " + std::to_string(cap_) + " paths");
    std::uint64_t mask = 0;
    for (std::size_t i = 1; i < path_.size(); ++i) {
      const NodeId v = path_[i];
      auto it = std::find(universe_.begin(), universe_.end(), v);
      if (it == universe_.end()) {
        if (universe_.size() == 64) throw RefusalError("oracle: paths touch more than 64 nodes");
        universe_.push_back(v);
        it = universe_.end() - 1;
      }
      mask |= std::uint64_t{1} << (it - universe_.begin());
    }
    if (!by_mask_.contains(mask)) {
      Path p{color_, path_};
      p.nodes.push_back(q_.target);
      by_mask_.emplace(mask, std::move(p));
    }
  }

  const ColorGraph& g_;
  const Query& q_;
  int bound_;
  std::size_t cap_;
  Color color_ = 0;
  std::vector<NodeId> path_;
  std::vector<char> on_path_;
  std::size_t found_ = 0;
  std::vector<NodeId> universe_;
  std::map<std::uint64_t, Path> by_mask_;
};

/// f(A) = most disjoint masks inside A. Branch on the lowest node of A:
/// either it stays unused or it is covered by a mask whose lowest node it is.
class MaskPacking {
 public:
  explicit MaskPacking(std::vector<std::uint64_t> masks) {
    for (auto m : masks) {
      by_low_[std::countr_zero(m)].push_back(m);
      all_ |= m;
    }
  }

  int best(std::uint64_t avail) {
    if (avail == 0) return 0;
    if (auto it = memo_.find(avail); it != memo_.end()) return it->second;
    const int v = std::countr_zero(avail);
    const std::uint64_t bit = std::uint64_t{1} << v;
    int out = best(avail & ~bit);
    for (auto m : by_low_[v]) {
      if ((m & avail) == m) out = std::max(out, 1 + best(avail & ~m));
    }
    memo_.emplace(avail, out);
    return out;
  }

  std::vector<std::uint64_t> witness() {
    std::vector<std::uint64_t> out;
    std::uint64_t avail = all_;
    while (avail != 0) {
      const int here = best(avail);
      if (here == 0) break;
      const int v = std::countr_zero(avail);
      const std::uint64_t bit = std::uint64_t{1} << v;
      if (best(avail & ~bit) == here) {
        avail &= ~bit;
        continue;
      }
      for (auto m : by_low_[v]) {
        if ((m & avail) == m && 1 + best(avail & ~m) == here) {
          out.push_back(m);
          avail &= ~m;
          break;
        }
      }
    }
    return out;
  }

  std::uint64_t all() const { return all_; }

 private:
  std::vector<std::uint64_t> by_low_[64];
  std::uint64_t all_ = 0;
  std::unordered_map<std::uint64_t, int> memo_;
};

}  // namespace

PathSet brute_force_max_disjoint(const ColorGraph& g, const Query& q) {
  check_query(g.node_count(), q);
  const int n = static_cast<int>(g.node_count());
  const int bound = std::min(q.length_bound.value_or(n - 1), n - 1);
  PathSet out;
  for (Color c = 1; c <= g.color_count(); ++c) {
    if (bound >= 1 && g.has_edge(q.source, q.target, c)) out.push_back(Path{c, {q.source, q.target}});
  }
  PathCollector collect(g, q, bound, g.node_count() <= kSmallGraph ? kSmallGraphPathCap : kPathCap);
  collect.run();
  std::vector<std::uint64_t> masks;
  for (const auto& [mask, path] : collect.by_mask()) masks.push_back(mask);
  MaskPacking packing(masks);
  for (auto m : packing.witness()) out.push_back(collect.by_mask().at(m));
  return out;
}

std::vector<std::size_t> brute_force_set_packing(const PackingInstance& inst) {
  if (inst.sets.size() > 24) throw RefusalError("oracle: more than 24 sets");
  const std::size_t count = inst.sets.size();
  std::vector<std::size_t> best;
  std::vector<std::size_t> current;
  std::vector<NodeId> used;
  auto fits = [&](std::size_t i) {
    for (NodeId v : inst.sets[i].nodes) {
      if (std::find(used.begin(), used.end(), v) != used.end()) return false;
    }
    return true;
  };
  auto search = [&](auto&& self, std::size_t i) -> void {
    if (current.size() > best.size()) best = current;
    if (current.size() + (count - i) <= best.size()) return;
    for (std::size_t j = i; j < count; ++j) {
      if (!fits(j)) continue;
      current.push_back(j);
      used.insert(used.end(), inst.sets[j].nodes.begin(), inst.sets[j].nodes.end());
      self(self, j + 1);
      used.resize(used.size() - inst.sets[j].nodes.size());
      current.pop_back();
    }
  };
  search(search, 0);
  return best;
}

bool satisfies(const CnfFormula& f, const std::vector<bool>& assignment) {
  for (const auto& clause : f.clauses) {
    bool sat = false;
    for (int lit : clause) {
      const bool value = assignment[static_cast<std::size_t>(std::abs(lit) - 1)];
      sat = sat || (lit > 0 ? value : !value);
    }
    if (!sat) return false;
  }
  return true;
}

std::optional<std::vector<bool>> brute_force_sat(const CnfFormula& f) {
  if (f.variable_count > 20) throw RefusalError("oracle: more than 20 variables");
  const auto r = static_cast<std::size_t>(f.variable_count);
  std::vector<bool> assignment(r);
  for (std::uint32_t bits = 0; bits < (std::uint32_t{1} << r); ++bits) {
    for (std::size_t i = 0; i < r; ++i) assignment[i] = ((bits >> i) & 1U) != 0;
    if (satisfies(f, assignment)) return assignment;
  }
  return std::nullopt;
}

}  // namespace cdp
