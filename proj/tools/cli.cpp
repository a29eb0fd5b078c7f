#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <random>
#include <regex>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "cdp/exact.hpp"
#include "cdp/greedy.hpp"
#include "cdp/instances.hpp"
#include "cdp/lcdp.hpp"
#include "cdp/oracle.hpp"

namespace cdp::cli {

namespace {

using json = nlohmann::ordered_json;

class CliError : public std::runtime_error {
 public:
  CliError(int code, std::string kind, const std::string& what)
      : std::runtime_error(what), code_(code), kind_(std::move(kind)) {}
  int code() const { return code_; }
  const std::string& kind() const { return kind_; }

 private:
  int code_;
  std::string kind_;
};

[[noreturn]] void usage(const std::string& msg) { throw CliError(kUsage, "usage", msg); }

std::string read_source(const std::string& path) {
  std::ostringstream buf;
  if (path == "-") {
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CliError(kUsage, "io", "cannot open '" + path + "'");
  buf << in.rdbuf();
  return buf.str();
}

void write_target(const std::string& path, const std::string& text, std::ostream& out) {
  if (path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw CliError(kUsage, "io", "cannot write '" + path + "'");
  file << text;
}

std::string digest_of(const ColorGraph& g) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : serialize_graph(g)) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv1a64:%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Rational parse_rational(const std::string& text) {
  static const std::regex fraction(R"(^(\d+)(?:/(\d+))?$)");
  static const std::regex decimal(R"(^(\d*)\.(\d+)$)");
  std::smatch m;
  using boost::multiprecision::cpp_int;
  if (std::regex_match(text, m, fraction)) {
    auto decimal_int = [](std::string d) {
      d.erase(0, std::min(d.find_first_not_of('0'), d.size() - 1));
      return cpp_int(d);
    };
    const cpp_int num = decimal_int(m[1].str());
    const cpp_int den = decimal_int(m[2].matched ? m[2].str() : "1");
    if (den == 0) usage("zero denominator in '" + text + "'");
    return Rational(num, den);
  }
  if (std::regex_match(text, m, decimal)) {
    // cpp_int reads a leading 0 as octal
    std::string digits = m[1].str() + m[2].str();
    digits.erase(0, std::min(digits.find_first_not_of('0'), digits.size() - 1));
    cpp_int den = 1;
    for (std::size_t i = 0; i < m[2].length(); ++i) den *= 10;
    return Rational(cpp_int(digits), den);
  }
  usage("expected a rational like 1/2 or 0.25, got '" + text + "'");
}

std::string to_string(const Rational& r) {
  std::ostringstream out;
  out << boost::multiprecision::numerator(r);
  if (boost::multiprecision::denominator(r) != 1) out << '/' << boost::multiprecision::denominator(r);
  return out.str();
}

json paths_json(const PathSet& paths) {
  json arr = json::array();
  for (const Path& p : paths) arr.push_back(json{{"color", p.color}, {"nodes", p.nodes}});
  return arr;
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  const auto us = std::chrono::duration_cast<std::chrono::microseconds>(std::chrono::steady_clock::now() - start);
  return static_cast<double>(us.count()) / 1000.0;
}

// ---------------------------------------------------------------------------

struct SolveOptions {
  std::uint64_t budget = GrayColorings::kDefaultBudget;
  int threads = 1;
  std::string tie_break = "lowest-color";
  std::uint64_t seed = 0;
  std::optional<int> max_len;
  std::string eps = "1/2";
  std::optional<int> swap;
  std::size_t path_cap = kDefaultPathCap;
};

const std::vector<std::string> kAlgorithms = {"exact", "greedy", "lcdp3", "lcdp4", "lsearch", "oracle"};

/// Length bound the algorithm's output must respect.
std::optional<int> bound_for(const std::string& algo, const SolveOptions& o) {
  if (algo == "lcdp3") return o.max_len.value_or(3);
  if (algo == "lcdp4") return 4;
  if (algo == "lsearch" || algo == "oracle") return o.max_len;
  return std::nullopt;
}

void check_options(const std::string& algo, const SolveOptions& o) {
  if ((algo == "exact" || algo == "greedy") && o.max_len) usage(algo + " does not take --max-len");
  if (algo == "lcdp3" && o.max_len && (*o.max_len < 1 || *o.max_len > 3)) usage("lcdp3 needs --max-len in 1..3");
  if (algo == "lcdp4" && o.max_len && *o.max_len != 4) usage("lcdp4 is fixed to --max-len 4");
  if (algo == "lsearch" && (!o.max_len || *o.max_len < 3)) usage("lsearch needs --max-len >= 3");
  if (algo == "oracle" && o.max_len && *o.max_len < 1) usage("--max-len must be positive");
  if (o.swap && *o.swap < 1) usage("--swap must be at least 1");
  if (o.threads < 1) usage("--threads must be at least 1");
  if (!parse_tie_break(o.tie_break)) usage("unknown tie-break '" + o.tie_break + "'");
}

PathSet solve(const std::string& algo, const ColorGraph& g, Query q, const SolveOptions& o) {
  q.length_bound = bound_for(algo, o);
  if (algo == "exact") {
    ExactOptions eo;
    eo.budget = o.budget;
    eo.threads = o.threads;
    return max_cdp_exact(g, q, eo);
  }
  if (algo == "greedy") {
    GreedyOptions go;
    go.tie_break = *parse_tie_break(o.tie_break);
    go.seed = o.seed;
    return greedy_c_approx(g, q, go);
  }
  if (algo == "lcdp3") return lcdp3_exact(g, q, *q.length_bound);
  if (algo == "lcdp4") return lcdp4_two_approx(g, q);
  if (algo == "lsearch") {
    if (o.swap) return lcdp_local_search_swap(g, q, *q.length_bound, *o.swap, o.path_cap);
    return lcdp_local_search(g, q, *q.length_bound, parse_rational(o.eps), o.path_cap);
  }
  if (algo == "oracle") return brute_force_max_disjoint(g, q);
  usage("unknown algorithm '" + algo + "'");
}

json params_for(const std::string& algo, const Query& q, const SolveOptions& o) {
  json p;
  p["source"] = q.source;
  p["target"] = q.target;
  if (auto b = bound_for(algo, o)) p["max_len"] = *b;
  if (algo == "exact") {
    p["budget"] = o.budget;
    p["threads"] = o.threads;
  } else if (algo == "greedy") {
    p["tie_break"] = std::string(cdp::to_string(*parse_tie_break(o.tie_break)));
    p["seed"] = o.seed;
  } else if (algo == "lsearch") {
    if (o.swap) {
      p["swap"] = *o.swap;
    } else {
      const Rational eps = parse_rational(o.eps);
      p["eps"] = to_string(eps);
      p["swap"] = choose_swap_param(*o.max_len - 1, eps);
    }
  }
  return p;
}

// ---------------------------------------------------------------------------

struct Common {
  std::string input;
  std::optional<int> source;
  std::optional<int> target;
  std::string format = "json";
  bool no_timing = false;
};

struct Loaded {
  ColorGraph graph;
  Query query;
  std::string digest;
};

Loaded load(const Common& c) {
  GraphFile file = parse_graph_file(read_source(c.input));
  Query q;
  if (file.query) q = *file.query;
  if (!file.query && (!c.source || !c.target)) usage("no query: pass --source and --target or add a 'q s t' line");
  if (c.source) q.source = *c.source;
  if (c.target) q.target = *c.target;
  check_query(file.graph.node_count(), q);
  Loaded out{std::move(file.graph), q, {}};
  out.digest = digest_of(out.graph);
  return out;
}

void add_query_options(CLI::App* sub, Common& c) {
  sub->add_option("--input,-i", c.input, "graph file, '-' for stdin")->required();
  sub->add_option("--source,-s", c.source, "source node");
  sub->add_option("--target,-t", c.target, "target node");
  sub->add_option("--format", c.format, "json or text")->check(CLI::IsMember({"json", "text"}));
  sub->add_flag("--no-timing", c.no_timing, "report elapsed_ms as 0");
}

void emit_report(std::ostream& out, const Common& c, const std::string& algo, const json& params,
                 const PathSet& paths, double ms, const std::string& digest) {
  if (c.no_timing) ms = 0;
  if (c.format == "text") {
    out << "algorithm " << algo << "\nkappa " << paths.size() << '\n';
    for (const Path& p : paths) {
      out << "path color " << p.color << ':';
      for (NodeId v : p.nodes) out << ' ' << v;
      out << '\n';
    }
    out << "elapsed_ms " << ms << "\ninput_digest " << digest << '\n';
    return;
  }
  json report;
  report["schema"] = 1;
  report["algorithm"] = algo;
  report["params"] = params;
  report["kappa"] = paths.size();
  report["paths"] = paths_json(paths);
  report["elapsed_ms"] = ms;
  report["input_digest"] = digest;
  out << report.dump(2) << '\n';
}

int run_solver(const std::string& algo, const Common& c, const SolveOptions& o, std::ostream& out) {
  check_options(algo, o);
  const Loaded in = load(c);
  const json params = params_for(algo, in.query, o);
  const auto start = std::chrono::steady_clock::now();
  PathSet paths = solve(algo, in.graph, in.query, o);
  const double ms = elapsed_ms(start);
  Query checked = in.query;
  checked.length_bound = bound_for(algo, o);
  if (const auto report = validate_solution(in.graph, checked, paths); !report.ok()) {
    throw CliError(kInternal, "internal", "solver output failed validation: " + report.message);
  }
  emit_report(out, c, algo, params, paths, ms, in.digest);
  return kOk;
}

// ---------------------------------------------------------------------------

struct GenOptions {
  std::string family;
  int colors = 3;
  std::size_t nodes = 10;
  double prob = 0.3;
  std::uint64_t seed = 1;
  std::string cnf;
  std::string out = "-";
};

int run_gen(const GenOptions& o, std::ostream& out) {
  std::string text;
  auto need_cnf = [&] {
    if (o.cnf.empty()) usage("--family " + o.family + " needs --cnf");
    return parse_dimacs(read_source(o.cnf));
  };
  if (o.family == "tight") {
    const auto ex = tight_example(o.colors);
    text = "# tight example, optimum " + std::to_string(o.colors) + "\n" + serialize_graph(ex.graph, ex.query);
  } else if (o.family == "sat-cdp") {
    const auto inst = sat_to_cdp22(need_cnf());
    text = "# sat-cdp, satisfiable iff kappa >= 2\n" + serialize_graph(inst.graph, inst.query);
  } else if (o.family == "sat-lcdp4") {
    const auto inst = sat3occ_to_lcdp4(need_cnf());
    text = "# sat-lcdp4, satisfiable iff kappa with max-len 4 equals " + std::to_string(inst.target) + "\n" +
           serialize_graph(inst.graph, inst.query);
  } else if (o.family == "random") {
    const auto g = random_color_graph(o.nodes, o.colors, o.prob, o.seed);
    text = serialize_graph(g, Query{});
  } else {
    usage("unknown family '" + o.family + "'");
  }
  write_target(o.out, text, out);
  return kOk;
}

// ---------------------------------------------------------------------------

struct VerifyOptions {
  std::string algo;
  std::size_t n_max = 9;
  std::size_t trials = 300;
  std::uint64_t seed = 1;
  int colors = 3;
};

int run_verify(const VerifyOptions& v, SolveOptions o, std::ostream& out) {
  if (std::find(kAlgorithms.begin(), kAlgorithms.end(), v.algo) == kAlgorithms.end() || v.algo == "oracle") {
    usage("--algo must be one of exact, greedy, lcdp3, lcdp4, lsearch");
  }
  if (v.n_max < 4) usage("--n-max must be at least 4");
  if (v.colors < 1) usage("--colors must be at least 1");
  if (v.algo == "lsearch" && !o.max_len) o.max_len = 4;
  check_options(v.algo, o);

  std::mt19937_64 rng(v.seed);
  std::size_t mismatches = 0;
  json failures = json::array();
  for (std::size_t trial = 0; trial < v.trials; ++trial) {
    const std::size_t n = 4 + static_cast<std::size_t>(rng() % (v.n_max - 3));
    const int c = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(v.colors));
    const double p = rng() % 2 == 0 ? 0.2 : 0.4;
    const std::uint64_t gseed = rng();
    const ColorGraph g = random_color_graph(n, c, p, gseed);
    Query q;
    q.length_bound = bound_for(v.algo, o);
    const auto opt = static_cast<long>(brute_force_max_disjoint(g, q).size());
    const PathSet got = solve(v.algo, g, q, o);
    const auto app = static_cast<long>(got.size());

    std::string problem;
    if (const auto report = validate_solution(g, q, got); !report.ok()) {
      problem = "invalid output: " + report.message;
    } else if (v.algo == "exact" || v.algo == "lcdp3") {
      if (app != opt) problem = "size differs from oracle";
    } else if (v.algo == "greedy") {
      if (c * app < opt) problem = "c * APP < OPT";
    } else if (v.algo == "lcdp4") {
      if (2 * app < opt) problem = "2 * APP < OPT";
      if (two_path_test(g, q) != (opt >= 2)) problem = "two_path_test disagrees with oracle";
    } else if (v.algo == "lsearch") {
      const int swap = o.swap ? *o.swap : choose_swap_param(*o.max_len - 1, parse_rational(o.eps));
      if (Rational(app) * hs_ratio(*o.max_len - 1, swap) < opt) problem = "APP * ratio < OPT";
    }
    if (!problem.empty()) {
      ++mismatches;
      if (failures.size() < 10) {
        failures.push_back(json{{"trial", trial}, {"nodes", n}, {"colors", c}, {"prob", p}, {"seed", gseed},
                                {"oracle", opt}, {"got", app}, {"problem", problem}});
      }
    }
  }
  json report;
  report["schema"] = 1;
  report["algorithm"] = "verify";
  report["params"] = json{{"algo", v.algo}, {"n_max", v.n_max}, {"trials", v.trials}, {"seed", v.seed},
                          {"colors", v.colors}};
  report["trials"] = v.trials;
  report["mismatches"] = mismatches;
  report["failures"] = failures;
  out << report.dump(2) << '\n';
  return mismatches == 0 ? kOk : kMismatch;
}

// ---------------------------------------------------------------------------

struct BenchOptions {
  std::string algo = "lcdp4";
  std::string input;
  std::size_t nodes = 100'000;
  int colors = 4;
  std::size_t edges = 100'000;
  std::uint64_t seed = 1;
  int repeat = 3;
};

int run_bench(const BenchOptions& b, const SolveOptions& o, std::ostream& out) {
  if (std::find(kAlgorithms.begin(), kAlgorithms.end(), b.algo) == kAlgorithms.end()) {
    usage("unknown algorithm '" + b.algo + "'");
  }
  if (b.repeat < 1) usage("--repeat must be at least 1");
  check_options(b.algo, o);
  ColorGraph g;
  Query q;
  if (!b.input.empty()) {
    Common c;
    c.input = b.input;
    auto in = load(c);
    g = std::move(in.graph);
    q = in.query;
  } else {
    g = random_sparse_color_graph(b.nodes, b.colors, b.edges, b.seed);
  }
  json runs = json::array();
  double best = 0;
  std::size_t kappa = 0;
  for (int i = 0; i < b.repeat; ++i) {
    const auto start = std::chrono::steady_clock::now();
    kappa = solve(b.algo, g, q, o).size();
    const double ms = elapsed_ms(start);
    runs.push_back(ms);
    best = i == 0 ? ms : std::min(best, ms);
  }
  json report;
  report["schema"] = 1;
  report["algorithm"] = "bench";
  json params = params_for(b.algo, q, o);
  params["algo"] = b.algo;
  params["nodes"] = g.node_count();
  params["edges"] = g.edge_count();
  params["colors"] = g.color_count();
  report["params"] = params;
  report["kappa"] = kappa;
  report["runs_ms"] = runs;
  report["best_ms"] = best;
  report["input_digest"] = digest_of(g);
  out << report.dump(2) << '\n';
  return kOk;
}

void add_solver_options(CLI::App* sub, const std::string& algo, SolveOptions& o) {
  if (algo == "exact" || algo == "bench" || algo == "verify") {
    sub->add_option("--budget", o.budget, "maximum number of colorings");
    sub->add_option("--threads", o.threads, "worker threads");
  }
  if (algo == "greedy" || algo == "bench" || algo == "verify") {
    sub->add_option("--tie-break", o.tie_break, "lowest-color, highest-color or adversarial-seeded");
    sub->add_option(algo == "greedy" ? "--seed" : "--tie-seed", o.seed, "seed for adversarial-seeded");
  }
  if (algo != "exact" && algo != "greedy") sub->add_option("--max-len", o.max_len, "path length bound");
  if (algo == "lsearch" || algo == "bench" || algo == "verify") {
    sub->add_option("--eps", o.eps, "ratio slack as a rational, e.g. 1/2");
    sub->add_option("--swap", o.swap, "explicit swap depth (overrides --eps)");
    sub->add_option("--path-cap", o.path_cap, "refuse beyond this many enumerated paths");
  }
}

void print_error(std::ostream& err, const std::string& kind, int code, const std::string& message) {
  err << json{{"error", kind}, {"exit", code}, {"message", message}}.dump() << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Disjoint uni-color paths in edge-colored graphs", "cdp"};
  app.require_subcommand(1);

  Common common;
  SolveOptions solve_opts;
  std::string selected;
  for (const std::string& algo : kAlgorithms) {
    auto* sub = app.add_subcommand(algo, "run the " + algo + " solver");
    add_query_options(sub, common);
    add_solver_options(sub, algo, solve_opts);
  }
  app.get_subcommand("lsearch")->get_option("--max-len")->required();

  GenOptions gen;
  auto* gen_cmd = app.add_subcommand("gen", "write a generated graph file");
  gen_cmd->add_option("--family", gen.family, "tight, sat-cdp, sat-lcdp4 or random")->required();
  gen_cmd->add_option("--colors", gen.colors, "colors (tight, random)");
  gen_cmd->add_option("--nodes", gen.nodes, "nodes (random)");
  gen_cmd->add_option("--prob", gen.prob, "edge probability per color (random)");
  gen_cmd->add_option("--seed", gen.seed, "seed (random)");
  gen_cmd->add_option("--cnf", gen.cnf, "DIMACS formula (sat-cdp, sat-lcdp4)");
  gen_cmd->add_option("--out,-o", gen.out, "output path, '-' for stdout");

  VerifyOptions verify;
  auto* verify_cmd = app.add_subcommand("verify", "cross-check a solver against the oracle");
  verify_cmd->add_option("--algo", verify.algo, "solver to check")->required();
  verify_cmd->add_option("--n-max", verify.n_max, "largest instance size");
  verify_cmd->add_option("--trials", verify.trials, "number of random instances");
  verify_cmd->add_option("--seed", verify.seed, "instance seed");
  verify_cmd->add_option("--colors", verify.colors, "largest color count");
  add_solver_options(verify_cmd, "verify", solve_opts);

  BenchOptions bench;
  auto* bench_cmd = app.add_subcommand("bench", "time a solver");
  bench_cmd->add_option("--algo", bench.algo, "solver to time");
  bench_cmd->add_option("--input,-i", bench.input, "graph file; random sparse graph if absent");
  bench_cmd->add_option("--nodes", bench.nodes, "nodes of the random graph");
  bench_cmd->add_option("--colors", bench.colors, "colors of the random graph");
  bench_cmd->add_option("--edges", bench.edges, "edges per color of the random graph");
  bench_cmd->add_option("--graph-seed", bench.seed, "seed of the random graph");
  bench_cmd->add_option("--repeat", bench.repeat, "timed runs");
  add_solver_options(bench_cmd, "bench", solve_opts);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    print_error(err, "usage", kUsage, e.what());
    return kUsage;
  }

  try {
    for (auto* sub : app.get_subcommands()) selected = sub->get_name();
    if (selected == "gen") return run_gen(gen, out);
    if (selected == "verify") return run_verify(verify, solve_opts, out);
    if (selected == "bench") return run_bench(bench, solve_opts, out);
    return run_solver(selected, common, solve_opts, out);
  } catch (const CliError& e) {
    print_error(err, e.kind(), e.code(), e.what());
    return e.code();
  } catch (const ParseError& e) {
    print_error(err, "parse", kParse, e.what());
    return kParse;
  } catch (const RefusalError& e) {
    print_error(err, "refusal", kRefusal, e.what());
    return kRefusal;
  } catch (const std::invalid_argument& e) {
    print_error(err, "invalid-input", kUsage, e.what());
    return kUsage;
  } catch (const std::out_of_range& e) {
    print_error(err, "invalid-input", kUsage, e.what());
    return kUsage;
  } catch (const std::exception& e) {
    print_error(err, "internal", kInternal, e.what());
    return kInternal;
  }
}

}  // namespace cdp::cli
