#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <nlohmann/json.hpp>

#include "chainrec/finite_oracle.hpp"
#include "chainrec/report.hpp"

namespace py = pybind11;
using namespace chainrec;

namespace {

Point to_point(const Domain& dom, const std::vector<double>& coords) {
  if (static_cast<int>(coords.size()) != dom.dim())
    throw std::invalid_argument("point dimension does not match domain");
  Point p{0.0, 0.0};
  for (std::size_t i = 0; i < coords.size(); ++i) p[i] = coords[i];
  return p;
}

std::vector<double> from_point(const Domain& dom, Point p) {
  return std::vector<double>(p.begin(), p.begin() + dom.dim());
}

}  // namespace

PYBIND11_MODULE(_chainrec, m) {
  m.doc() = "chain recurrence analysis of continuous maps over box grids";

  py::class_<Domain>(m, "Domain")
      .def_static("interval", &Domain::interval, py::arg("a") = 0.0,
                  py::arg("b") = 1.0)
      .def_static("square", &Domain::square, py::arg("ax") = 0.0,
                  py::arg("bx") = 1.0, py::arg("ay") = 0.0, py::arg("by") = 1.0)
      .def_static("circle", &Domain::circle)
      .def_static("torus", &Domain::torus)
      .def_property_readonly("dim", &Domain::dim)
      .def_property_readonly("periodic", &Domain::periodic)
      .def("diameter", &Domain::diameter);

  py::class_<Grid>(m, "Grid")
      .def_readonly("depth", &Grid::depth)
      .def_readonly("count", &Grid::count)
      .def_property_readonly("domain", [](const Grid& g) { return g.domain; })
      .def("width", &Grid::width, py::arg("axis") = 0)
      .def("box_diameter", &Grid::box_diameter)
      .def("center", [](const Grid& g, BoxId b) {
        return from_point(g.domain, g.center(b));
      });

  m.def("subdivide", &subdivide, py::arg("domain"), py::arg("depth"));
  m.def("box_of", [](const std::vector<double>& p, const Grid& g) {
    return box_of(to_point(g.domain, p), g);
  });
  m.def("metric_distance",
        [](const std::vector<double>& p, const std::vector<double>& q,
           const Domain& d) {
          return metric_distance(to_point(d, p), to_point(d, q), d);
        });
  m.def("neighborhood_boxes", &neighborhood_boxes, py::arg("boxes"),
        py::arg("r"), py::arg("grid"));

  py::class_<SystemDef>(m, "SystemDef")
      .def_readonly("name", &SystemDef::name)
      .def_property_readonly("domain",
                             [](const SystemDef& s) { return s.domain; })
      .def("__call__", [](const SystemDef& s, const std::vector<double>& p) {
        return from_point(s.domain, evaluate(s, to_point(s.domain, p)));
      });

  m.def("builtin", &builtin, py::arg("name"),
        py::arg("params") = std::map<std::string, double>{});

  py::class_<ChainGraph>(m, "ChainGraph")
      .def_property_readonly("delta",
                             [](const ChainGraph& g) { return g.params.delta; })
      .def_property_readonly("node_count", &ChainGraph::node_count)
      .def("successors", [](const ChainGraph& g, BoxId b) {
        return g.edges.at(b);
      });

  m.def("build_chain_graph",
        [](const SystemDef& sys, const Grid& grid, double delta,
           double margin) {
          return build_chain_graph(sys, grid, {delta, margin});
        },
        py::arg("system"), py::arg("grid"), py::arg("delta"),
        py::arg("rigor_margin") = 0.0);

  py::class_<ChainDecomposition>(m, "ChainDecomposition")
      .def_property_readonly("component_count",
                             [](const ChainDecomposition& d) {
                               return d.components.size();
                             })
      .def_readonly("scc_of", &ChainDecomposition::scc_of)
      .def("component", [](const ChainDecomposition& d, ComponentId c) {
        return d.components.at(c);
      })
      .def("has_cycle", [](const ChainDecomposition& d, ComponentId c) {
        return d.has_cycle.at(c);
      })
      .def("is_terminal", [](const ChainDecomposition& d, ComponentId c) {
        return d.terminal.at(c);
      })
      .def("terminal_components", [](const ChainDecomposition& d) {
        return terminal_components(d);
      })
      .def("recurrent_boxes", [](const ChainDecomposition& d) {
        return chain_recurrent_boxes(d);
      })
      .def("period", [](const ChainDecomposition& d, ComponentId c) {
        return component_period(d, c);
      });

  m.def("scc_decompose", &scc_decompose);
  m.def("chain_omega", &chain_omega);

  py::class_<BasinReport>(m, "BasinReport")
      .def_readonly("v_fraction", &BasinReport::v_fraction)
      .def("assignment", [](const BasinReport& r, BoxId b) -> py::object {
        ComponentId c = r.assignment.at(b);
        if (c == kAmbiguous) return py::none();
        return py::cast(c);
      });

  m.def("terminal_basin_partition", &terminal_basin_partition);

  py::enum_<PseudoOrbitKind>(m, "PseudoOrbitKind")
      .value("perturbed_orbit", PseudoOrbitKind::perturbed_orbit)
      .value("random_walk", PseudoOrbitKind::random_walk)
      .value("spliced", PseudoOrbitKind::spliced);

  py::class_<PseudoOrbit>(m, "PseudoOrbit")
      .def_readonly("delta", &PseudoOrbit::delta)
      .def("__len__", [](const PseudoOrbit& p) { return p.points.size(); })
      .def("point", [](const PseudoOrbit& p, std::size_t i) {
        return std::vector<double>{p.points.at(i).begin(), p.points.at(i).end()};
      });

  m.def("generate_pseudo_orbit",
        [](const SystemDef& sys, const std::vector<double>& x0, double delta,
           int length, std::uint64_t seed, PseudoOrbitKind kind) {
          return generate_pseudo_orbit(sys, to_point(sys.domain, x0), delta,
                                       length, seed, kind);
        },
        py::arg("system"), py::arg("x0"), py::arg("delta"), py::arg("length"),
        py::arg("seed"), py::arg("kind") = PseudoOrbitKind::perturbed_orbit);

  py::class_<ShadowingResult>(m, "ShadowingResult")
      .def_readonly("found", &ShadowingResult::found)
      .def_readonly("deviation", &ShadowingResult::deviation)
      .def_property_readonly("witness", [](const ShadowingResult& r) -> py::object {
        if (!r.witness) return py::none();
        return py::cast(std::vector<double>{r.witness->begin(), r.witness->end()});
      });

  m.def("shadowing_search", &shadowing_search, py::arg("system"),
        py::arg("pseudo_orbit"), py::arg("epsilon"), py::arg("search_depth"));
  m.def("inverse_branch_shadow",
        [](const SystemDef& sys, const PseudoOrbit& po) {
          return from_point(sys.domain, inverse_branch_shadow(sys, po));
        });
  m.def("orbit_deviation",
        [](const SystemDef& sys, const std::vector<double>& x,
           const PseudoOrbit& po) {
          return orbit_deviation(sys, to_point(sys.domain, x), po);
        });

  m.def("verify_finite_lemmas", [](int n) {
    bool ok = true;
    for (int k = 1; k <= n; ++k)
      for (const FiniteSystem& fs : enumerate_functional(k))
        ok = ok && verify_lemma_2_1(fs) && verify_lemma_1_1(fs) &&
             verify_maximality(fs);
    return ok;
  });

  m.def("run_config", [](const std::string& text) {
    AnalysisConfig cfg = parse_config(text);
    return emit_json(run_pipeline(cfg));
  });
}
