#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "capcover/cutwidth.hpp"
#include "capcover/detecting.hpp"
#include "capcover/fes.hpp"
#include "capcover/generators.hpp"
#include "capcover/oracle.hpp"
#include "capcover/reductions.hpp"
#include "capcover/vertex_integrity.hpp"

namespace py = pybind11;
using namespace capcover;

namespace {

LinearArrangement arrangement_for(const CapacitatedGraph& g, const std::optional<std::vector<Vertex>>& order,
                                  bool exact) {
  if (order) return LinearArrangement(*order);
  return find_arrangement(g, exact ? ArrangementMode::exact : ArrangementMode::heuristic);
}

}  // namespace

PYBIND11_MODULE(_capcover, m) {
  m.doc() = "Capacitated vertex cover via edge orientations";

  auto base = py::register_exception<Error>(m, "Error", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<StructuralError>(m, "StructuralError", base.ptr());
  py::register_exception<CapExceeded>(m, "CapExceeded", base.ptr());

  py::class_<CapacitatedGraph>(m, "Graph")
      .def(py::init<>())
      .def(py::init<int>(), py::arg("n"))
      .def("add_vertex", &CapacitatedGraph::add_vertex, py::arg("capacity") = 0)
      .def("add_edge", &CapacitatedGraph::add_edge)
      .def("set_capacity", &CapacitatedGraph::set_capacity)
      .def("capacity", &CapacitatedGraph::capacity)
      .def("degree", &CapacitatedGraph::degree)
      .def("has_edge", &CapacitatedGraph::has_edge)
      .def_property_readonly("num_vertices", &CapacitatedGraph::num_vertices)
      .def_property_readonly("num_edges", &CapacitatedGraph::num_edges)
      .def_property_readonly("edges",
                             [](const CapacitatedGraph& g) {
                               std::vector<std::pair<Vertex, Vertex>> out;
                               for (const Edge& e : g.edges()) out.emplace_back(e.u, e.v);
                               return out;
                             })
      .def_readwrite("budget", &CapacitatedGraph::budget)
      .def("__str__", &format_instance);

  py::class_<Orientation>(m, "Orientation")
      .def(py::init<>())
      .def(py::init([](std::vector<Vertex> head) { return Orientation{std::move(head)}; }))
      .def_readwrite("head", &Orientation::head);

  py::class_<Violation>(m, "Violation")
      .def_readonly("vertex", &Violation::vertex)
      .def_readonly("indegree", &Violation::indegree)
      .def_readonly("capacity", &Violation::capacity);

  py::class_<FeasReport>(m, "FeasReport")
      .def_readonly("feasible", &FeasReport::feasible)
      .def_readonly("size", &FeasReport::size)
      .def_readonly("violations", &FeasReport::violations);

  py::class_<SolveResult>(m, "SolveResult")
      .def_readonly("min_size", &SolveResult::min_size)
      .def_readonly("certificate", &SolveResult::certificate);

  py::class_<Decision>(m, "Decision")
      .def_readonly("yes", &Decision::yes)
      .def_readonly("certificate", &Decision::certificate);

  py::class_<ChoiceGroups>(m, "ChoiceGroups")
      .def_readonly("forced", &ChoiceGroups::forced)
      .def_readonly("groups", &ChoiceGroups::groups)
      .def_readonly("free", &ChoiceGroups::free)
      .def("__str__", &format_choice_groups);

  py::class_<Reduced>(m, "Reduced")
      .def_readonly("graph", &Reduced::graph)
      .def_readonly("k", &Reduced::k)
      .def_readonly("meta", &Reduced::meta);
  py::class_<CwReduction, Reduced>(m, "CwReduction")
      .def_property_readonly("expression", [](const CwReduction& r) { return format_cw_expression(r.expression); })
      .def("verify_expression", [](const CwReduction& r) { return verify_cw_expression(r.expression, r.graph); });
  py::class_<TdReduction, Reduced>(m, "TdReduction")
      .def_readonly("gamma", &TdReduction::gamma)
      .def_readonly("delta", &TdReduction::delta)
      .def_property_readonly("witness_parents", [](const TdReduction& r) { return r.witness.parent; })
      .def("witness_depth", [](const TdReduction& r) {
        auto c = verify_td_witness(r.graph, r.witness);
        return c.valid ? std::optional<int>(c.depth) : std::nullopt;
      });

  m.def("parse_instance", &parse_instance);
  m.def("format_instance", &format_instance);
  m.def("parse_orientation", &parse_orientation);
  m.def("format_orientation", &format_orientation);
  m.def("normalize_capacities", &normalize_capacities);
  m.def("verify_orientation", &verify_orientation);
  m.def("assign_edges", [](const CapacitatedGraph& g, const std::vector<Vertex>& s) { return assign_edges(g, s); });

  m.def("solve_exact", &solve_exact, py::arg("g"), py::arg("max_vertices") = kDefaultOracleVertexCap);
  m.def("solve_pruned", [](const CapacitatedGraph& g, int k) { return solve_pruned(g, k); });
  m.def("solve_canonical", &solve_canonical);

  m.def("cutwidth", [](const CapacitatedGraph& g, std::vector<Vertex> order) {
    return cutwidth_of(g, LinearArrangement(std::move(order)));
  });
  m.def("find_arrangement",
        [](const CapacitatedGraph& g, bool exact) { return arrangement_for(g, std::nullopt, exact).order(); },
        py::arg("g"), py::arg("exact") = false);
  m.def("solve_cutdp",
        [](const CapacitatedGraph& g, std::optional<std::vector<Vertex>> order, bool exact) {
          auto r = solve_cutdp(g, arrangement_for(g, order, exact));
          return SolveResult{r.min_size, r.certificate};
        },
        py::arg("g"), py::arg("order") = py::none(), py::arg("exact") = false);

  m.def("vertex_integrity", [](const CapacitatedGraph& g) {
    auto mod = compute_modulator(g);
    return py::make_tuple(mod.vi, mod.vertices);
  });
  m.def("solve_vi_min",
        [](const CapacitatedGraph& g, std::optional<std::vector<Vertex>> U) {
          std::optional<Modulator> mod;
          if (U) mod = modulator_from(g, *U);
          return solve_vi_min(g, mod);
        },
        py::arg("g"), py::arg("modulator") = py::none());
  m.def("solve_vi", [](const CapacitatedGraph& g, int k) { return solve_vi(g, k); });

  m.def("feedback_edge_number", [](const CapacitatedGraph& g) { return feedback_edge_set(g).size(); });
  m.def("solve_fes", [](const CapacitatedGraph& g, int cap) { return solve_fes(g, cap); }, py::arg("g"),
        py::arg("cap") = kDefaultFesCap);

  m.def("reduce_smc", [](const std::string& text) { return static_cast<Reduced>(reduce_smc(parse_smc(text))); });
  m.def("smc_brute_force", [](const std::string& text) { return smc_brute_force(parse_smc(text)); });
  m.def("reduce_sat_natural", [](const std::string& text) {
    auto psi = parse_cnf(text);
    auto grp = group_formula(psi, GroupingMode::greedy);
    return static_cast<Reduced>(reduce_sat_natural(psi, grp, default_families(grp)));
  });
  m.def("reduce_sat_cw", [](const std::string& text) { return reduce_sat_cw(parse_cnf(text)); });
  m.def("one_in_three_brute_force", [](const std::string& text) { return one_in_three_brute_force(parse_cnf(text)); });
  m.def("reduce_mcc_td", [](const std::string& text) { return reduce_mcc_td(parse_mcc(text)); });
  m.def("mcc_brute_force", [](const std::string& text) { return mcc_brute_force(parse_mcc(text)); });

  m.def("is_detecting", [](int u, const std::vector<std::vector<int>>& f, int d) { return is_detecting(u, f, d); });
  m.def("build_family",
        [](int u, int d, bool greedy) {
          return build_family(u, d, greedy ? FamilyMode::greedy : FamilyMode::singleton).sets;
        },
        py::arg("universe"), py::arg("d"), py::arg("greedy") = true);

  m.def("random_gnp", &random_gnp);
  m.def("random_sparse", &random_sparse);
  m.def("random_forest", &random_forest);
  m.def("random_layered", &random_layered);
}
