#include "cdp/exact.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <string>
#include <thread>

#include "cdp/flow.hpp"

namespace cdp {

UniGraph induced_by_coloring(const ColorGraph& g, const Query& q, const NodeColoring& coloring) {
  (void)q;  // s and t carry the wildcard color inside `coloring`
  UniGraph out(g.node_count());
  for (Color c = 1; c <= g.color_count(); ++c) {
    const UniGraph& layer = g.layer(c);
    for (std::size_t u = 0; u < g.node_count(); ++u) {
      const auto nu = static_cast<NodeId>(u);
      if (!coloring.matches(nu, c)) continue;
      for (NodeId v : layer.neighbors(nu)) {
        if (nu < v && coloring.matches(v, c)) out.add_edge(nu, v);
      }
    }
  }
  return out;
}

std::optional<std::uint64_t> coloring_count(std::size_t free_nodes, int color_count) {
  std::uint64_t total = 1;
  const auto c = static_cast<std::uint64_t>(color_count);
  for (std::size_t i = 0; i < free_nodes; ++i) {
    if (c != 0 && total > std::numeric_limits<std::uint64_t>::max() / c) return std::nullopt;
    total *= c;
  }
  return total;
}

namespace {

std::vector<std::vector<Color>> full_domains(std::size_t free_count, int color_count) {
  if (color_count < 1) throw std::invalid_argument("color count must be positive");
  std::vector<Color> all;
  for (Color c = 1; c <= color_count; ++c) all.push_back(c);
  return std::vector<std::vector<Color>>(free_count, all);
}

std::optional<std::uint64_t> domain_product(const std::vector<std::vector<Color>>& domains) {
  std::uint64_t total = 1;
  for (const auto& d : domains) {
    const auto k = static_cast<std::uint64_t>(d.size());
    if (k != 0 && total > std::numeric_limits<std::uint64_t>::max() / k) return std::nullopt;
    total *= k;
  }
  return total;
}

std::string describe(const std::vector<std::vector<Color>>& domains) {
  std::string out;
  for (const auto& d : domains) out += (out.empty() ? "" : "*") + std::to_string(d.size());
  return out.empty() ? "1" : out;
}

}  // namespace

GrayColorings::GrayColorings(std::size_t node_count, std::vector<NodeId> free_nodes, int color_count,
                             std::uint64_t budget)
    : free_(std::move(free_nodes)), domains_(full_domains(free_.size(), color_count)) {
  const auto count = coloring_count(free_.size(), color_count);
  if (!count || *count > budget) {
    throw RefusalError("coloring enumeration of " + std::to_string(color_count) + "^" +
                       std::to_string(free_.size()) + " exceeds budget " + std::to_string(budget));
  }
  total_ = *count;
  coloring_.color.assign(node_count, 0);
  for (NodeId v : free_) coloring_.color[static_cast<std::size_t>(v)] = 1;
  digit_.assign(free_.size(), 0);
  dir_.assign(free_.size(), 1);
}

GrayColorings::GrayColorings(std::size_t node_count, std::vector<NodeId> free_nodes,
                             std::vector<std::vector<Color>> domains, std::uint64_t budget)
    : free_(std::move(free_nodes)), domains_(std::move(domains)) {
  if (domains_.size() != free_.size()) throw std::invalid_argument("one domain per free node");
  for (const auto& d : domains_) {
    if (d.empty()) throw std::invalid_argument("empty color domain");
  }
  const auto count = domain_product(domains_);
  if (!count || *count > budget) {
    throw RefusalError("coloring enumeration of " + describe(domains_) + " exceeds budget " + std::to_string(budget));
  }
  total_ = *count;
  coloring_.color.assign(node_count, 0);
  for (std::size_t k = 0; k < free_.size(); ++k) coloring_.color[static_cast<std::size_t>(free_[k])] = domains_[k][0];
  digit_.assign(free_.size(), 0);
  dir_.assign(free_.size(), 1);
}

bool GrayColorings::advance() {
  if (emitted_ >= total_) return false;
  for (std::size_t k = free_.size(); k-- > 0;) {
    const int next = digit_[k] + dir_[k];
    if (next >= 0 && next < static_cast<int>(domains_[k].size())) {
      digit_[k] = next;
      changed_ = free_[k];
      coloring_.color[static_cast<std::size_t>(free_[k])] = domains_[k][static_cast<std::size_t>(next)];
      ++emitted_;
      return true;
    }
    dir_[k] = -dir_[k];
  }
  return false;
}

std::vector<std::vector<Color>> useful_colors(const ColorGraph& g, std::span<const NodeId> free_nodes) {
  std::vector<std::vector<Color>> out;
  out.reserve(free_nodes.size());
  for (NodeId v : free_nodes) {
    std::vector<Color> d;
    for (Color c = 1; c <= g.color_count(); ++c) {
      if (!g.layer(c).neighbors(v).empty()) d.push_back(c);
    }
    if (d.empty()) d.push_back(1);
    out.push_back(std::move(d));
  }
  return out;
}

namespace {

struct Best {
  int kappa = -1;
  PathSet paths;
};

PathSet relabel(const ConnectivityResult& res, const NodeColoring& coloring) {
  PathSet out;
  out.reserve(res.witness.size());
  for (const Path& p : res.witness) {
    // Every G[delta] edge joins two nodes of its own color, so the first
    // internal node names the color of the whole path.
    Path colored = p;
    colored.color = coloring.color[static_cast<std::size_t>(p.nodes[1])];
    out.push_back(std::move(colored));
  }
  return out;
}

int upper_bound(const ColorGraph& g, const Query& q) {
  int sum = 0;
  std::vector<char> ns(g.node_count(), 0);
  std::vector<char> nt(g.node_count(), 0);
  for (Color c = 1; c <= g.color_count(); ++c) {
    sum += vertex_connectivity(g.layer(c), q).kappa;
    for (NodeId v : g.layer(c).neighbors(q.source)) ns[static_cast<std::size_t>(v)] = 1;
    for (NodeId v : g.layer(c).neighbors(q.target)) nt[static_cast<std::size_t>(v)] = 1;
  }
  const int ds = static_cast<int>(std::count(ns.begin(), ns.end(), 1));
  const int dt = static_cast<int>(std::count(nt.begin(), nt.end(), 1));
  return std::min({sum, ds, dt});
}

/// Scans one Gray sequence. `pinned` fixes a node outside the sequence.
Best scan(const ColorGraph& g, const Query& q, std::vector<NodeId> free, std::vector<std::vector<Color>> domains,
          std::optional<std::pair<NodeId, Color>> pinned, const ExactOptions& options, int bound,
          std::atomic<int>& global_best) {
  GrayColorings seq(g.node_count(), std::move(free), std::move(domains), options.budget);
  NodeColoring start = seq.current();
  auto coloring_of = [&](const NodeColoring& c) {
    if (!pinned) return c;
    NodeColoring out = c;
    out.color[static_cast<std::size_t>(pinned->first)] = pinned->second;
    return out;
  };

  Best best;
  NodeColoring current = coloring_of(start);
  FlowState state(induced_by_coloring(g, q, current), q);
  auto consider = [&](const ConnectivityResult& res) {
    if (res.kappa > best.kappa) {
      best.kappa = res.kappa;
      best.paths = relabel(res, current);
      int seen = global_best.load();
      while (seen < best.kappa && !global_best.compare_exchange_weak(seen, best.kappa)) {
      }
    }
  };
  consider(state.result());

  while (!(options.early_exit && global_best.load() >= bound) && seq.advance()) {
    current = coloring_of(seq.current());
    UniGraph next = induced_by_coloring(g, q, current);
    if (options.incremental) {
      state.reconnect(*seq.changed(), std::move(next));
      if (state.kappa() > best.kappa) consider(state.result());
    } else {
      const auto res = vertex_connectivity(next, q);
      if (res.kappa > best.kappa) consider(res);
    }
  }
  return best;
}

}  // namespace

PathSet max_cdp_exact(const ColorGraph& g, const Query& q, const ExactOptions& options) {
  auto [stripped, answer] = strip_st_edges(g, q);

  std::vector<NodeId> free;
  for (std::size_t v = 0; v < g.node_count(); ++v) {
    const auto id = static_cast<NodeId>(v);
    if (id != q.source && id != q.target) free.push_back(id);
  }
  // Domains come from the stripped graph: an st edge is answered directly.
  auto domains = useful_colors(stripped, free);
  const auto count = domain_product(domains);
  if (!count || *count > options.budget) {
    throw RefusalError("coloring enumeration of " + describe(domains) + " exceeds budget " +
                       std::to_string(options.budget));
  }

  const int bound = options.early_exit ? upper_bound(stripped, q) : std::numeric_limits<int>::max();
  std::atomic<int> global_best{-1};
  Best best;

  if (options.threads <= 1 || free.empty() || domains.front().size() == 1) {
    best = scan(stripped, q, free, domains, std::nullopt, options, bound, global_best);
  } else {
    const NodeId head = free.front();
    const std::vector<Color> head_colors = domains.front();
    std::vector<NodeId> rest(free.begin() + 1, free.end());
    std::vector<std::vector<Color>> rest_domains(domains.begin() + 1, domains.end());
    const int parts_count = static_cast<int>(head_colors.size());
    std::vector<Best> parts(head_colors.size());
    std::atomic<int> next_part{0};
    {
      std::vector<std::jthread> workers;
      const int n_workers = std::min(options.threads, parts_count);
      for (int w = 0; w < n_workers; ++w) {
        workers.emplace_back([&] {
          for (int part = next_part++; part < parts_count; part = next_part++) {
            const auto i = static_cast<std::size_t>(part);
            parts[i] = scan(stripped, q, rest, rest_domains, std::make_pair(head, head_colors[i]), options, bound,
                            global_best);
          }
        });
      }
    }
    for (auto& part : parts) {
      if (part.kappa > best.kappa) best = std::move(part);
    }
  }

  for (auto& p : best.paths) answer.push_back(std::move(p));
  return answer;
}

}  // namespace cdp
