#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "cdp/cnf.hpp"
#include "cdp/exact.hpp"
#include "cdp/greedy.hpp"
#include "cdp/instances.hpp"
#include "cdp/lcdp.hpp"
#include "cdp/oracle.hpp"

namespace py = pybind11;
using namespace cdp;

namespace {

Query make_query(NodeId s, NodeId t, std::optional<int> max_len) { return Query{s, t, max_len}; }

py::object to_fraction(const Rational& r) {
  std::ostringstream num;
  std::ostringstream den;
  num << boost::multiprecision::numerator(r);
  den << boost::multiprecision::denominator(r);
  auto Fraction = py::module_::import("fractions").attr("Fraction");
  return Fraction(py::int_(py::str(num.str())), py::int_(py::str(den.str())));
}

// Anything fractions.Fraction accepts: int, str, float, Fraction.
Rational from_python(const py::object& value) {
  auto f = py::module_::import("fractions").attr("Fraction")(value);
  const auto num = py::str(f.attr("numerator")).cast<std::string>();
  const auto den = py::str(f.attr("denominator")).cast<std::string>();
  using boost::multiprecision::cpp_int;
  // cpp_int would read a leading 0 as octal; str(int) never has one except "0".
  return Rational(cpp_int(num), cpp_int(den));
}

CnfFormula make_formula(const std::vector<std::vector<int>>& clauses, std::optional<int> variable_count) {
  CnfFormula f{0, clauses};
  if (variable_count) {
    f.variable_count = *variable_count;
  } else {
    for (const auto& c : clauses) {
      for (int lit : c) f.variable_count = std::max(f.variable_count, std::abs(lit));
    }
  }
  return f;
}

std::vector<std::tuple<NodeId, NodeId, Color>> edge_list(const ColorGraph& g) {
  std::vector<std::tuple<NodeId, NodeId, Color>> out;
  for (Color c = 1; c <= g.color_count(); ++c) {
    for (auto [u, v] : g.layer(c).edges()) out.emplace_back(u, v, c);
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(colorpaths, m) {
  m.doc() = "Disjoint uni-color paths in edge-colored graphs";

  static py::exception<ParseError> parse_error(m, "ParseError", PyExc_ValueError);
  static py::exception<RefusalError> refusal_error(m, "RefusalError", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ParseError& e) {
      py::set_error(parse_error, e.what());
    } catch (const RefusalError& e) {
      py::set_error(refusal_error, e.what());
    }
  });

  py::class_<ColorGraph>(m, "ColorGraph")
      .def(py::init<std::size_t, int>(), py::arg("node_count"), py::arg("color_count"))
      .def_property_readonly("node_count", &ColorGraph::node_count)
      .def_property_readonly("color_count", &ColorGraph::color_count)
      .def_property_readonly("edge_count", &ColorGraph::edge_count)
      .def("add_edge", &ColorGraph::add_edge, py::arg("u"), py::arg("v"), py::arg("color"))
      .def("has_edge", &ColorGraph::has_edge, py::arg("u"), py::arg("v"), py::arg("color"))
      .def("edges", &edge_list, "(u, v, color) triples with u < v, grouped by color")
      .def("__eq__", [](const ColorGraph& a, const ColorGraph& b) { return a == b; })
      .def("__str__", [](const ColorGraph& g) { return serialize_graph(g); })
      .def("__repr__", [](const ColorGraph& g) {
        return "ColorGraph(nodes=" + std::to_string(g.node_count()) + ", colors=" + std::to_string(g.color_count()) +
               ", edges=" + std::to_string(g.edge_count()) + ")";
      });

  py::class_<Path>(m, "Path")
      .def(py::init([](Color color, std::vector<NodeId> nodes) { return Path{color, std::move(nodes)}; }),
           py::arg("color"), py::arg("nodes"))
      .def_readwrite("color", &Path::color)
      .def_readwrite("nodes", &Path::nodes)
      .def_property_readonly("length", &Path::length)
      .def("__eq__", [](const Path& a, const Path& b) { return a == b; })
      .def("__repr__", [](const Path& p) {
        std::string out = "Path(color=" + std::to_string(p.color) + ", nodes=[";
        for (std::size_t i = 0; i < p.nodes.size(); ++i) out += (i ? ", " : "") + std::to_string(p.nodes[i]);
        return out + "])";
      });

  m.def("parse_graph", [](const std::string& text) { return parse_graph(text); }, py::arg("text"));
  m.def(
      "parse_graph_file",
      [](const std::string& text) -> std::pair<ColorGraph, py::object> {
        auto file = parse_graph_file(text);
        if (!file.query) return {std::move(file.graph), py::none()};
        return {std::move(file.graph), py::make_tuple(file.query->source, file.query->target)};
      },
      py::arg("text"), "Returns (graph, None) or (graph, (s, t)).");
  m.def(
      "serialize_graph",
      [](const ColorGraph& g, std::optional<NodeId> s, std::optional<NodeId> t) {
        if (s.has_value() != t.has_value()) throw std::invalid_argument("give both s and t, or neither");
        if (!s) return serialize_graph(g);
        return serialize_graph(g, make_query(*s, *t, std::nullopt));
      },
      py::arg("g"), py::arg("s") = py::none(), py::arg("t") = py::none());

  m.def(
      "validate_solution",
      [](const ColorGraph& g, NodeId s, NodeId t, const PathSet& paths, std::optional<int> max_len) {
        const auto r = validate_solution(g, make_query(s, t, max_len), paths);
        return std::make_pair(r.ok(), r.message);
      },
      py::arg("g"), py::arg("s"), py::arg("t"), py::arg("paths"), py::arg("max_len") = py::none(),
      "Returns (ok, message).");

  m.def(
      "max_cdp_exact",
      [](const ColorGraph& g, NodeId s, NodeId t, std::uint64_t budget, int threads, bool incremental) {
        ExactOptions o;
        o.budget = budget;
        o.threads = threads;
        o.incremental = incremental;
        py::gil_scoped_release release;
        return max_cdp_exact(g, make_query(s, t, std::nullopt), o);
      },
      py::arg("g"), py::arg("s"), py::arg("t"), py::arg("budget") = GrayColorings::kDefaultBudget,
      py::arg("threads") = 1, py::arg("incremental") = true);

  m.def(
      "greedy_c_approx",
      [](const ColorGraph& g, NodeId s, NodeId t, const std::string& tie_break, std::uint64_t seed) {
        const auto policy = parse_tie_break(tie_break);
        if (!policy) throw std::invalid_argument("unknown tie-break '" + tie_break + "'");
        GreedyOptions o;
        o.tie_break = *policy;
        o.seed = seed;
        return greedy_c_approx(g, make_query(s, t, std::nullopt), o);
      },
      py::arg("g"), py::arg("s"), py::arg("t"), py::arg("tie_break") = "lowest", py::arg("seed") = 0);

  m.def(
      "lcdp3_exact",
      [](const ColorGraph& g, NodeId s, NodeId t, int max_len) {
        return lcdp3_exact(g, make_query(s, t, std::nullopt), max_len);
      },
      py::arg("g"), py::arg("s"), py::arg("t"), py::arg("max_len") = 3);

  m.def(
      "lcdp_local_search",
      [](const ColorGraph& g, NodeId s, NodeId t, int max_len, const py::object& eps, std::optional<int> swap,
         std::size_t path_cap) {
        const Query q = make_query(s, t, std::nullopt);
        if (swap) return lcdp_local_search_swap(g, q, max_len, *swap, path_cap);
        return lcdp_local_search(g, q, max_len, from_python(eps), path_cap);
      },
      py::arg("g"), py::arg("s"), py::arg("t"), py::arg("max_len"), py::arg("eps") = py::str("1/2"),
      py::arg("swap") = py::none(), py::arg("path_cap") = std::size_t{200'000});

  m.def(
      "lcdp4_two_approx",
      [](const ColorGraph& g, NodeId s, NodeId t) { return lcdp4_two_approx(g, make_query(s, t, std::nullopt)); },
      py::arg("g"), py::arg("s"), py::arg("t"));
  m.def(
      "two_path_test",
      [](const ColorGraph& g, NodeId s, NodeId t) { return two_path_test(g, make_query(s, t, std::nullopt)); },
      py::arg("g"), py::arg("s"), py::arg("t"));

  m.def(
      "brute_force_max_disjoint",
      [](const ColorGraph& g, NodeId s, NodeId t, std::optional<int> max_len) {
        return brute_force_max_disjoint(g, make_query(s, t, max_len));
      },
      py::arg("g"), py::arg("s"), py::arg("t"), py::arg("max_len") = py::none());

  m.def("hs_ratio", [](int k, int s) { return to_fraction(hs_ratio(k, s)); }, py::arg("k"), py::arg("s"));
  m.def(
      "choose_swap_param", [](int k, const py::object& eps) { return choose_swap_param(k, from_python(eps)); },
      py::arg("k"), py::arg("eps"));

  m.def(
      "tight_example",
      [](int c) {
        auto ex = tight_example(c);
        return std::make_pair(std::move(ex.graph), std::move(ex.bold));
      },
      py::arg("c"), "Returns (graph, bold) with s = 0, t = 1.");
  m.def(
      "random_color_graph",
      [](std::size_t n, int c, double p, std::uint64_t seed) { return random_color_graph(n, c, p, seed); },
      py::arg("n"), py::arg("c"), py::arg("p"), py::arg("seed"));

  m.def(
      "sat_to_cdp22",
      [](const std::vector<std::vector<int>>& clauses, std::optional<int> variable_count) {
        auto inst = sat_to_cdp22(make_formula(clauses, variable_count));
        return py::make_tuple(std::move(inst.graph), inst.query.source, inst.query.target);
      },
      py::arg("clauses"), py::arg("variable_count") = py::none(),
      "Returns (graph, s, t); the formula is satisfiable iff two paths exist.");
  m.def(
      "sat3occ_to_lcdp4",
      [](const std::vector<std::vector<int>>& clauses, std::optional<int> variable_count) {
        auto inst = sat3occ_to_lcdp4(make_formula(clauses, variable_count));
        return py::make_tuple(std::move(inst.graph), inst.query.source, inst.query.target, inst.target);
      },
      py::arg("clauses"), py::arg("variable_count") = py::none(),
      "Returns (graph, s, t, target); satisfiable iff target length-4 paths exist.");
  m.def(
      "is_satisfiable",
      [](const std::vector<std::vector<int>>& clauses, std::optional<int> variable_count) {
        return brute_force_sat(make_formula(clauses, variable_count)).has_value();
      },
      py::arg("clauses"), py::arg("variable_count") = py::none());
  m.def(
      "parse_dimacs",
      [](const std::string& text) {
        auto f = parse_dimacs(text);
        return std::make_pair(f.variable_count, f.clauses);
      },
      py::arg("text"), "Returns (variable_count, clauses).");
}
