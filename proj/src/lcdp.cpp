#include "cdp/lcdp.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

#include "cdp/flow.hpp"
#include "cdp/matching.hpp"

namespace cdp {

namespace {

std::size_t idx(NodeId v) { return static_cast<std::size_t>(v); }

bool is_blocked(std::span<const char> blocked, NodeId v) {
  return !blocked.empty() && blocked[idx(v)] != 0;
}

/// Depth-first walk over simple st-paths of at most l edges. `visit`
/// returns true to stop; the function then returns true.
template <class Visit>
bool for_each_short_path(const UniGraph& g, const Query& q, int l, std::span<const char> blocked,
                         Visit&& visit) {
  const auto dt = bfs_distances(g, q.target, l, blocked);
  if (dt[idx(q.source)] == kUnreachable) return false;
  std::vector<NodeId> path{q.source};
  std::vector<std::size_t> cursor{0};
  std::vector<char> on_path(g.node_count(), 0);
  on_path[idx(q.source)] = 1;
  while (!path.empty()) {
    const NodeId v = path.back();
    const auto nbrs = g.neighbors(v);
    bool descended = false;
    while (cursor.back() < nbrs.size()) {
      const NodeId w = nbrs[cursor.back()++];
      if (on_path[idx(w)] || is_blocked(blocked, w)) continue;
      const auto edges = static_cast<int>(path.size());
      if (dt[idx(w)] == kUnreachable || edges + dt[idx(w)] > l) continue;
      if (w == q.target) {
        path.push_back(w);
        const bool stop = visit(static_cast<const std::vector<NodeId>&>(path));
        path.pop_back();
        if (stop) return true;
        continue;
      }
      path.push_back(w);
      on_path[idx(w)] = 1;
      cursor.push_back(0);
      descended = true;
      break;
    }
    if (!descended) {
      on_path[idx(v)] = 0;
      path.pop_back();
      cursor.pop_back();
    }
  }
  return false;
}

std::vector<char> blocked_copy(std::size_t n, std::span<const char> blocked) {
  std::vector<char> out(n, 0);
  if (!blocked.empty()) std::copy(blocked.begin(), blocked.end(), out.begin());
  return out;
}

bool reachable_within(const UniGraph& g, const Query& q, int l, std::span<const char> blocked = {}) {
  return bfs_distances(g, q.source, l, blocked)[idx(q.target)] <= l;
}

int distance(const UniGraph& g, const Query& q) {
  return bfs_distances(g, q.source)[idx(q.target)];
}

}  // namespace

std::optional<std::vector<NodeId>> shortest_path(const UniGraph& g, const Query& q, int max_len,
                                                 std::span<const char> blocked) {
  if (is_blocked(blocked, q.source) || is_blocked(blocked, q.target)) return std::nullopt;
  // Scratch survives between calls; only touched entries are reset, so a
  // search near s costs nothing proportional to the whole graph.
  thread_local std::vector<NodeId> parent;
  thread_local std::vector<int> dist;
  thread_local std::vector<NodeId> queue;
  if (dist.size() < g.node_count()) {
    parent.resize(g.node_count(), kNoNode);
    dist.resize(g.node_count(), kUnreachable);
  }
  queue.assign(1, q.source);
  dist[idx(q.source)] = 0;
  std::optional<std::vector<NodeId>> found;
  for (std::size_t head = 0; head < queue.size() && !found; ++head) {
    const NodeId u = queue[head];
    if (dist[idx(u)] >= max_len) continue;
    for (NodeId w : g.neighbors(u)) {
      if (dist[idx(w)] != kUnreachable || is_blocked(blocked, w)) continue;
      dist[idx(w)] = dist[idx(u)] + 1;
      parent[idx(w)] = u;
      queue.push_back(w);
      if (w == q.target) {
        std::vector<NodeId> out{w};
        for (NodeId cur = u; cur != kNoNode; cur = parent[idx(cur)]) out.push_back(cur);
        std::reverse(out.begin(), out.end());
        found = std::move(out);
        break;
      }
    }
  }
  for (NodeId v : queue) {
    dist[idx(v)] = kUnreachable;
    parent[idx(v)] = kNoNode;
  }
  return found;
}

std::vector<Path> enumerate_paths(const ColorGraph& g, const Query& q, int l, std::size_t cap) {
  check_query(g.node_count(), q);
  if (l < 1) throw std::invalid_argument("length bound must be positive");
  std::vector<Path> out;
  for (Color c = 1; c <= g.color_count(); ++c) {
    const UniGraph layer = prune_by_distance(g.layer(c), q, l);
    for_each_short_path(layer, q, l, {}, [&](const std::vector<NodeId>& nodes) {
      if (out.size() == cap) {
        throw RefusalError("more than " + std::to_string(cap) + " paths of length <= " + std::to_string(l));
      }
      out.push_back(Path{c, nodes});
      return false;
    });
  }
  return out;
}

// ---------------------------------------------------------------------------

PathSet lcdp3_exact(const ColorGraph& g, const Query& q, int max_len) {
  if (max_len < 1 || max_len > 3) throw std::invalid_argument("lcdp3_exact handles length bounds 1..3");
  auto [graph, answer] = strip_st_edges(g, q);
  if (max_len == 1) return answer;

  std::vector<char> used(g.node_count(), 0);
  std::vector<NodeId> used_list;
  for (Color c = 1; c <= graph.color_count(); ++c) {
    const UniGraph& layer = graph.layer(c);
    for (NodeId v : layer.neighbors(q.source)) {
      if (used[idx(v)] || !layer.has_edge(v, q.target)) continue;
      answer.push_back(Path{c, {q.source, v, q.target}});
      used[idx(v)] = 1;
      used_list.push_back(v);
    }
  }
  if (max_len == 2) return answer;

  const ColorGraph rest = remove_nodes(graph, used_list);
  const PairGraph pairs = build_pair_graph(rest, q);
  for (auto [u, v] : max_matching(pairs.undirected())) answer.push_back(*pairs.realize(u, v, q));
  return answer;
}

// ---------------------------------------------------------------------------

PackingInstance make_packing_instance(const ColorGraph& g, const Query& q, std::span<const Path> paths,
                                      int k, int swap_param) {
  check_query(g.node_count(), q);
  PackingInstance inst;
  inst.k = k;
  inst.swap_param = swap_param;
  for (std::size_t v = 0; v < g.node_count(); ++v) {
    const auto id = static_cast<NodeId>(v);
    if (id != q.source && id != q.target) inst.universe.push_back(id);
  }
  for (const Path& p : paths) {
    PackedSet set{{p.internal().begin(), p.internal().end()}, p};
    if (set.nodes.empty()) throw std::invalid_argument("path without internal nodes cannot be packed");
    if (static_cast<int>(set.nodes.size()) > k) throw std::invalid_argument("path has more than k internal nodes");
    std::sort(set.nodes.begin(), set.nodes.end());
    inst.sets.push_back(std::move(set));
  }
  return inst;
}

namespace {

class PackingSearch {
 public:
  explicit PackingSearch(const PackingInstance& inst) : inst_(inst) {
    std::unordered_map<NodeId, int> index;
    for (NodeId v : inst.universe) index.emplace(v, static_cast<int>(index.size()));
    for (const auto& set : inst.sets) {
      std::vector<int> elems;
      for (NodeId v : set.nodes) {
        auto it = index.find(v);
        if (it == index.end()) throw std::invalid_argument("set element outside the universe");
        elems.push_back(it->second);
      }
      sets_.push_back(std::move(elems));
    }
    owner_.assign(index.size(), -1);
    mark_.assign(index.size(), 0);
    in_solution_.assign(sets_.size(), 0);
  }

  void add(std::size_t set) {
    for (int e : sets_[set]) owner_[static_cast<std::size_t>(e)] = static_cast<int>(set);
    in_solution_[set] = 1;
    solution_.push_back(set);
  }

  void remove(std::size_t set) {
    for (int e : sets_[set]) owner_[static_cast<std::size_t>(e)] = -1;
    in_solution_[set] = 0;
    solution_.erase(std::find(solution_.begin(), solution_.end(), set));
  }

  /// First (i+1)-tuple of disjoint outside sets meeting at most i members.
  bool improve_once() {
    for (int i = 0; i <= inst_.swap_param; ++i) {
      candidates_.clear();
      hits_of_.clear();
      for (std::size_t s = 0; s < sets_.size(); ++s) {
        if (in_solution_[s]) continue;
        std::vector<int> hits;
        for (int e : sets_[s]) {
          const int o = owner_[static_cast<std::size_t>(e)];
          if (o >= 0 && std::find(hits.begin(), hits.end(), o) == hits.end()) hits.push_back(o);
        }
        if (static_cast<int>(hits.size()) > i) continue;
        candidates_.push_back(s);
        hits_of_.push_back(std::move(hits));
      }
      chosen_.clear();
      hit_count_.clear();
      if (search(0, i + 1, i)) {
        std::vector<int> evicted;
        for (const auto& [member, count] : hit_count_) evicted.push_back(member);
        for (int member : evicted) remove(static_cast<std::size_t>(member));
        const auto picked = chosen_;
        for (std::size_t c : picked) add(candidates_[c]);
        return true;
      }
    }
    return false;
  }

  const std::vector<std::size_t>& solution() const { return solution_; }

 private:
  bool search(std::size_t from, int remaining, int max_hits) {
    if (remaining == 0) return true;
    for (std::size_t c = from; c < candidates_.size(); ++c) {
      const auto& elems = sets_[candidates_[c]];
      bool clash = false;
      for (int e : elems) clash = clash || mark_[static_cast<std::size_t>(e)] != 0;
      if (clash) continue;
      for (int h : hits_of_[c]) ++hit_count_[h];
      if (static_cast<int>(hit_count_.size()) <= max_hits) {
        for (int e : elems) mark_[static_cast<std::size_t>(e)] = 1;
        chosen_.push_back(c);
        if (search(c + 1, remaining - 1, max_hits)) {
          for (int e : elems) mark_[static_cast<std::size_t>(e)] = 0;
          return true;
        }
        chosen_.pop_back();
        for (int e : elems) mark_[static_cast<std::size_t>(e)] = 0;
      }
      for (int h : hits_of_[c]) {
        if (--hit_count_[h] == 0) hit_count_.erase(h);
      }
    }
    return false;
  }

  const PackingInstance& inst_;
  std::vector<std::vector<int>> sets_;
  std::vector<int> owner_;
  std::vector<char> mark_;
  std::vector<char> in_solution_;
  std::vector<std::size_t> solution_;
  std::vector<std::size_t> candidates_;
  std::vector<std::vector<int>> hits_of_;
  std::vector<std::size_t> chosen_;
  std::map<int, int> hit_count_;
};

}  // namespace

std::vector<std::size_t> set_packing_local_search(const PackingInstance& inst,
                                                  std::span<const std::size_t> initial) {
  if (inst.swap_param < 1) throw std::invalid_argument("swap parameter must be at least 1");
  PackingSearch search(inst);
  for (std::size_t s : initial) {
    if (s >= inst.sets.size()) throw std::invalid_argument("initial selection out of range");
    search.add(s);
  }
  // Reject overlapping initial selections.
  {
    std::vector<NodeId> seen;
    for (std::size_t s : initial) seen.insert(seen.end(), inst.sets[s].nodes.begin(), inst.sets[s].nodes.end());
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) {
      throw std::invalid_argument("initial selection is not disjoint");
    }
  }
  while (search.improve_once()) {
  }
  return search.solution();
}

Rational hs_ratio(int k, int s) {
  if (k < 2) throw std::invalid_argument("hs_ratio: k must be at least 2");
  if (s < 1) throw std::invalid_argument("hs_ratio: s must be at least 1");
  const bool even = s % 2 == 0;
  const int r = even ? s / 2 + 1 : (s + 1) / 2;
  if (k == 2) {
    // (k-1)^r = 1 makes both branches 0/0; take the limit k -> 2.
    return even ? Rational(2 * r, 2 * r - 1) : Rational(2 * r + 1, 2 * r);
  }
  boost::multiprecision::cpp_int power = 1;
  for (int i = 0; i < r; ++i) power *= (k - 1);
  if (even) return Rational(k * power - k, 2 * power - k);
  return Rational(k * power - 2, 2 * power - 2);
}

int choose_swap_param(int k, const Rational& eps, int max_swap) {
  if (eps <= 0) throw std::invalid_argument("eps must be positive");
  const Rational target = Rational(k, 2) + eps;
  for (int s = 1; s <= max_swap; ++s) {
    if (hs_ratio(k, s) <= target) return s;
  }
  throw std::invalid_argument("no swap depth up to " + std::to_string(max_swap) + " reaches the requested ratio");
}

PathSet lcdp_local_search(const ColorGraph& g, const Query& q, int l, const Rational& eps, std::size_t cap) {
  if (l < 3) throw std::invalid_argument("lcdp_local_search needs l >= 3");
  return lcdp_local_search_swap(g, q, l, choose_swap_param(l - 1, eps), cap);
}

PathSet lcdp_local_search_swap(const ColorGraph& g, const Query& q, int l, int swap, std::size_t cap) {
  if (l < 3) throw std::invalid_argument("lcdp_local_search needs l >= 3");
  const int k = l - 1;
  auto [graph, answer] = strip_st_edges(g, q);
  const auto paths = enumerate_paths(graph, q, l, cap);
  const auto inst = make_packing_instance(graph, q, paths, k, swap);
  for (std::size_t s : set_packing_local_search(inst)) answer.push_back(inst.sets[s].path);
  return answer;
}

// ---------------------------------------------------------------------------

namespace {

using NodePath = std::vector<NodeId>;

/// Two disjoint paths of length <= l inside one layer.
std::optional<std::pair<NodePath, NodePath>> two_disjoint_in_layer(const UniGraph& g, const Query& q, int l,
                                                                   std::span<const char> blocked) {
  auto first = shortest_path(g, q, l, blocked);
  if (!first) return std::nullopt;
  auto mask = blocked_copy(g.node_count(), blocked);
  if (first->size() == 2) {
    // Direct edge: any other short path is disjoint from it.
    UniGraph without = g;
    without.remove_edge(q.source, q.target);
    if (auto other = shortest_path(without, q, l, mask)) return std::make_pair(*first, *other);
    return std::nullopt;
  }
  auto try_against = [&](const NodePath& p) -> std::optional<NodePath> {
    for (std::size_t i = 1; i + 1 < p.size(); ++i) mask[idx(p[i])] = 1;
    auto other = shortest_path(g, q, l, mask);
    for (std::size_t i = 1; i + 1 < p.size(); ++i) mask[idx(p[i])] = blocked.empty() ? 0 : blocked[idx(p[i])];
    return other;
  };
  if (auto other = try_against(*first)) return std::make_pair(*first, *other);
  std::optional<std::pair<NodePath, NodePath>> found;
  for_each_short_path(g, q, l, blocked, [&](const NodePath& p) {
    if (auto other = try_against(p)) {
      found = std::make_pair(p, *other);
      return true;
    }
    return false;
  });
  return found;
}

std::size_t count_short_paths(const UniGraph& g, const Query& q, int l, std::size_t stop_at) {
  std::size_t count = 0;
  for_each_short_path(g, q, l, {}, [&](const NodePath&) { return ++count >= stop_at; });
  return count;
}

constexpr int kTestLength = 4;

/// Procedure behind test_pair. With want_witness unset, a positive answer
/// from the path-count shortcut comes back with empty paths.
std::optional<std::pair<NodePath, NodePath>> run_pair_test(const UniGraph& gi, const UniGraph& gj, const Query& q,
                                                           bool want_witness) {
  UniGraph a = prune_by_distance(gi, q, kTestLength);
  UniGraph b = prune_by_distance(gj, q, kTestLength);
  std::vector<NodeId> xa;
  std::vector<NodeId> xb;
  // Remove each graph's cut nodes from the other until nothing changes;
  // every disjoint pair survives this, since a cut node lies on all short
  // paths of its own graph.
  while (true) {
    if (!reachable_within(a, q, kTestLength) || !reachable_within(b, q, kTestLength)) return std::nullopt;
    xa = length_bounded_cut_nodes(a, q, kTestLength);
    xb = length_bounded_cut_nodes(b, q, kTestLength);
    UniGraph na = prune_by_distance(remove_nodes(a, xb), q, kTestLength);
    UniGraph nb = prune_by_distance(remove_nodes(b, xa), q, kTestLength);
    if (na == a && nb == b) break;
    a = std::move(na);
    b = std::move(nb);
  }
  std::vector<NodeId> common;
  std::set_intersection(xa.begin(), xa.end(), xb.begin(), xb.end(), std::back_inserter(common));
  if (!common.empty()) return std::nullopt;

  if (!xa.empty() && !xb.empty()) {
    const int da = distance(a, q);
    const int db = distance(b, q);
    if (da <= 3 || db <= 3) {
      const bool a_short = da <= 3;
      const UniGraph& shorter = a_short ? a : b;
      const UniGraph& other = a_short ? b : a;
      const NodePath p = *shortest_path(shorter, q, kTestLength);
      std::vector<char> mask(other.node_count(), 0);
      for (std::size_t i = 1; i + 1 < p.size(); ++i) mask[idx(p[i])] = 1;
      if (auto r = shortest_path(other, q, kTestLength, mask)) {
        return a_short ? std::make_pair(p, *r) : std::make_pair(*r, p);
      }
    } else if (!want_witness && (count_short_paths(a, q, kTestLength, 3) > 2 ||
                                 count_short_paths(b, q, kTestLength, 3) > 2)) {
      return std::make_pair(NodePath{}, NodePath{});
    }
  }

  // Few candidate paths remain: try each path of a against b.
  std::optional<std::pair<NodePath, NodePath>> found;
  std::vector<char> mask(b.node_count(), 0);
  for_each_short_path(a, q, kTestLength, {}, [&](const NodePath& p) {
    for (std::size_t i = 1; i + 1 < p.size(); ++i) mask[idx(p[i])] = 1;
    auto r = shortest_path(b, q, kTestLength, mask);
    for (std::size_t i = 1; i + 1 < p.size(); ++i) mask[idx(p[i])] = 0;
    if (r) found = std::make_pair(p, *r);
    return found.has_value();
  });
  return found;
}

std::optional<std::pair<Path, Path>> search_two_paths(const ColorGraph& g, const Query& q,
                                                      std::span<const char> blocked, bool want_witness) {
  check_query(g.node_count(), q);
  const NodeId s = q.source;
  const NodeId t = q.target;

  std::vector<Color> direct;
  for (Color c = 1; c <= g.color_count(); ++c) {
    if (g.has_edge(s, t, c)) direct.push_back(c);
  }
  if (direct.size() >= 2) return std::make_pair(Path{direct[0], {s, t}}, Path{direct[1], {s, t}});

  std::vector<UniGraph> layers;
  layers.reserve(static_cast<std::size_t>(g.color_count()));
  for (Color c = 1; c <= g.color_count(); ++c) {
    if (g.has_edge(s, t, c)) {
      UniGraph layer = g.layer(c);
      layer.remove_edge(s, t);
      layers.push_back(prune_by_distance(layer, q, kTestLength, blocked));
    } else {
      layers.push_back(prune_by_distance(g.layer(c), q, kTestLength, blocked));
    }
  }
  auto layer = [&](Color c) -> const UniGraph& { return layers[static_cast<std::size_t>(c - 1)]; };

  if (direct.size() == 1) {
    for (Color c = 1; c <= g.color_count(); ++c) {
      if (auto p = shortest_path(layer(c), q, kTestLength)) {
        return std::make_pair(Path{direct[0], {s, t}}, Path{c, *p});
      }
    }
    return std::nullopt;
  }

  std::vector<Color> single;
  for (Color c = 1; c <= g.color_count(); ++c) {
    if (!reachable_within(layer(c), q, kTestLength)) continue;
    if (auto two = two_disjoint_in_layer(layer(c), q, kTestLength, {})) {
      return std::make_pair(Path{c, two->first}, Path{c, two->second});
    }
    single.push_back(c);
  }
  for (std::size_t i = 0; i < single.size(); ++i) {
    for (std::size_t j = i + 1; j < single.size(); ++j) {
      if (auto r = run_pair_test(layer(single[i]), layer(single[j]), q, want_witness)) {
        return std::make_pair(Path{single[i], r->first}, Path{single[j], r->second});
      }
    }
  }
  return std::nullopt;
}

}  // namespace

int kappa_l_capped(const UniGraph& g, const Query& q, int l, int cap) {
  check_query(g.node_count(), q);
  if (l < 1) throw std::invalid_argument("length bound must be positive");
  if (cap <= 0) return 0;
  const UniGraph pruned = prune_by_distance(g, q, l);
  if (!reachable_within(pruned, q, l)) return 0;
  if (cap == 1) return 1;
  return two_disjoint_in_layer(pruned, q, l, {}) ? 2 : 1;
}

std::vector<NodeId> length_bounded_cut_nodes(const UniGraph& g, const Query& q, int l) {
  const auto p = shortest_path(g, q, l);
  if (!p || p->size() <= 2) return {};
  std::vector<NodeId> out;
  std::vector<char> mask(g.node_count(), 0);
  for (std::size_t i = 1; i + 1 < p->size(); ++i) {
    const NodeId v = (*p)[i];
    mask[idx(v)] = 1;
    if (!reachable_within(g, q, l, mask)) out.push_back(v);
    mask[idx(v)] = 0;
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool test_pair(const UniGraph& gi, const UniGraph& gj, const Query& q) {
  check_query(gi.node_count(), q);
  return run_pair_test(gi, gj, q, false).has_value();
}

bool two_path_test(const ColorGraph& g, const Query& q) { return search_two_paths(g, q, {}, false).has_value(); }

std::optional<std::pair<Path, Path>> find_two_paths(const ColorGraph& g, const Query& q,
                                                     std::span<const char> blocked) {
  return search_two_paths(g, q, blocked, true);
}

namespace {

/// Solution plus the bookkeeping for cheap improvement scans. `clean[k]`
/// marks a path whose swap already failed and whose surroundings have not
/// changed since.
class Lcdp4Search {
 public:
  Lcdp4Search(const ColorGraph& g, const Query& q)
      : g_(g),
        q_(q),
        blocked_(g.node_count(), 0),
        owner_(g.node_count(), -1),
        local_(g.node_count(), kNoNode),
        no_free_path_(static_cast<std::size_t>(g.color_count()) + 1, 0) {}

  void add(Path p) {
    place(solution_.size(), std::move(p));
  }

  bool improve();
  std::vector<Path> take() { return std::move(solution_); }

 private:
  void place(std::size_t k, Path p) {
    if (k == solution_.size()) {
      solution_.push_back(std::move(p));
      clean_.push_back(0);
    } else {
      solution_[k] = std::move(p);
      clean_[k] = 0;
    }
    for (NodeId v : solution_[k].internal()) {
      blocked_[idx(v)] = 1;
      owner_[idx(v)] = static_cast<int>(k);
    }
  }
  void release(std::size_t k) {
    for (NodeId v : solution_[k].internal()) {
      blocked_[idx(v)] = 0;
      owner_[idx(v)] = -1;
    }
  }
  bool is_terminal(NodeId v) const { return v == q_.source || v == q_.target; }
  std::optional<std::pair<Path, Path>> local_swap(std::size_t k);
  void touch_near(const std::vector<NodeId>& freed);

  const ColorGraph& g_;
  Query q_;
  std::vector<Path> solution_;
  std::vector<char> clean_;
  std::vector<char> blocked_;
  std::vector<int> owner_;
  // Scratch node -> local index, kNoNode outside a call.
  std::vector<NodeId> local_;
  // Color known to have no free short path; cleared when nodes are freed.
  std::vector<char> no_free_path_;
};

/// Two disjoint short paths once path k is released. Only called when no
/// free short path exists, so both new paths meet path k and stay within
/// two steps of it; the search runs on that induced piece.
std::optional<std::pair<Path, Path>> Lcdp4Search::local_swap(std::size_t k) {
  std::vector<NodeId> nodes{q_.source, q_.target};
  local_[idx(q_.source)] = 0;
  local_[idx(q_.target)] = 1;
  auto enter = [&](NodeId v) {
    if (local_[idx(v)] != kNoNode) return false;
    local_[idx(v)] = static_cast<NodeId>(nodes.size());
    nodes.push_back(v);
    return true;
  };
  std::vector<NodeId> frontier;
  for (NodeId v : solution_[k].internal()) {
    if (enter(v)) frontier.push_back(v);
  }
  for (int depth = 0; depth < 2; ++depth) {
    std::vector<NodeId> next;
    for (NodeId u : frontier) {
      for (Color c = 1; c <= g_.color_count(); ++c) {
        for (NodeId w : g_.layer(c).neighbors(u)) {
          if (!is_terminal(w) && !blocked_[idx(w)] && enter(w)) next.push_back(w);
        }
      }
    }
    frontier = std::move(next);
  }
  // Edges are collected from the internal side; s and t can have huge degree.
  ColorGraph piece(nodes.size(), g_.color_count());
  for (std::size_t i = 2; i < nodes.size(); ++i) {
    for (Color c = 1; c <= g_.color_count(); ++c) {
      for (NodeId w : g_.layer(c).neighbors(nodes[i])) {
        const NodeId j = local_[idx(w)];
        if (j == kNoNode || (j >= 2 && j <= static_cast<NodeId>(i))) continue;
        piece.add_edge(static_cast<NodeId>(i), j, c);
      }
    }
  }
  for (NodeId v : nodes) local_[idx(v)] = kNoNode;

  auto two = find_two_paths(piece, Query{0, 1, std::nullopt});
  if (!two) return std::nullopt;
  for (Path* p : {&two->first, &two->second}) {
    for (NodeId& v : p->nodes) v = nodes[idx(v)];
  }
  return two;
}

/// Paths within two steps of a freed node may have gained a swap.
void Lcdp4Search::touch_near(const std::vector<NodeId>& freed) {
  if (freed.empty()) return;
  std::fill(no_free_path_.begin(), no_free_path_.end(), 0);
  std::vector<NodeId> seen;
  auto enter = [&](NodeId v) {
    if (local_[idx(v)] != kNoNode) return false;
    local_[idx(v)] = 0;
    seen.push_back(v);
    return true;
  };
  std::vector<NodeId> frontier;
  for (NodeId v : freed) {
    if (enter(v)) frontier.push_back(v);
  }
  for (int depth = 0; depth <= 2; ++depth) {
    std::vector<NodeId> next;
    for (NodeId u : frontier) {
      if (owner_[idx(u)] >= 0) clean_[static_cast<std::size_t>(owner_[idx(u)])] = 0;
      if (depth == 2) continue;
      for (Color c = 1; c <= g_.color_count(); ++c) {
        for (NodeId w : g_.layer(c).neighbors(u)) {
          if (!is_terminal(w) && enter(w)) next.push_back(w);
        }
      }
    }
    frontier = std::move(next);
  }
  for (NodeId v : seen) local_[idx(v)] = kNoNode;
}

/// First improving move for the current solution, applied in place.
bool Lcdp4Search::improve() {
  for (Color c = 1; c <= g_.color_count(); ++c) {
    if (no_free_path_[static_cast<std::size_t>(c)]) continue;
    if (auto p = shortest_path(g_.layer(c), q_, kTestLength, blocked_)) {
      add(Path{c, *p});
      return true;
    }
    no_free_path_[static_cast<std::size_t>(c)] = 1;
  }
  for (std::size_t k = 0; k < solution_.size(); ++k) {
    if (clean_[k]) continue;
    const Path old = solution_[k];
    release(k);
    auto two = local_swap(k);
    if (!two) {
      place(k, old);
      clean_[k] = 1;
      continue;
    }
    place(k, std::move(two->first));
    add(std::move(two->second));
    std::vector<NodeId> freed;
    for (NodeId v : old.internal()) {
      if (!blocked_[idx(v)]) freed.push_back(v);
    }
    touch_near(freed);
    return true;
  }
  return false;
}

}  // namespace

PathSet lcdp4_two_approx(const ColorGraph& g, const Query& q) {
  auto [graph, answer] = strip_st_edges(g, q);
  Lcdp4Search search(graph, q);
  while (search.improve()) {
  }
  for (auto& p : search.take()) answer.push_back(std::move(p));
  return answer;
}

bool lcdp4_has_improvement(const ColorGraph& g, const Query& q, const PathSet& solution) {
  auto [graph, direct] = strip_st_edges(g, q);
  Lcdp4Search search(graph, q);
  for (const Path& p : solution) {
    if (p.length() > 1) search.add(p);
  }
  return search.improve();
}

}  // namespace cdp
