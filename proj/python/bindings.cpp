#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "swanson2d/bicoherent.hpp"
#include "swanson2d/fockmatrix.hpp"
#include "swanson2d/innerprod.hpp"
#include "swanson2d/metricmap.hpp"
#include "swanson2d/report.hpp"

namespace py = pybind11;
using namespace swanson2d;

namespace {

MultiIndex idx(std::pair<int, int> p) { return {p.first, p.second}; }

py::dict row_dict(const ResultRow& r) {
  py::dict d;
  d["suite"] = r.suite;
  d["check"] = r.check;
  d["value"] = r.value;
  d["relation"] = r.relation == Relation::at_most ? "<=" : r.relation == Relation::at_least ? ">=" : "";
  d["tolerance"] = r.tolerance;
  d["status"] = r.status;
  return d;
}

RunConfig config_from(const py::object& obj) {
  if (obj.is_none()) return RunConfig{};
  if (py::isinstance<py::str>(obj)) return RunConfig::from_json_text(obj.cast<std::string>());
  const auto json = py::module_::import("json");
  return RunConfig::from_json_text(json.attr("dumps")(obj).cast<std::string>());
}

}  // namespace

PYBIND11_MODULE(_swanson2d, m) {
  m.doc() = "Numerical checks for the two-dimensional noncommutative Swanson model";
  m.attr("__version__") = kLibraryVersion;

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<UnsupportedError>(m, "UnsupportedError", PyExc_NotImplementedError);
  py::register_exception<TruncationError>(m, "TruncationError", PyExc_ArithmeticError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

  py::class_<ModelParams>(m, "ModelParams")
      .def(py::init<cplx, double>(), py::arg("nu"), py::arg("theta") = 0.0)
      .def_property_readonly("nu", &ModelParams::nu)
      .def_property_readonly("theta", &ModelParams::theta)
      .def_property_readonly("n1", &ModelParams::n1)
      .def_property_readonly("n2", &ModelParams::n2)
      .def_property_readonly("energy_quantum", &ModelParams::energy_quantum)
      .def("adjoint", &ModelParams::adjoint)
      .def("__repr__", [](const ModelParams& p) {
        return "ModelParams(nu=" + py::repr(py::cast(p.nu())).cast<std::string>() +
               ", theta=" + std::to_string(p.theta()) + ")";
      });

  // specfun
  m.def("hermite_eval", &hermite_eval, py::arg("n"), py::arg("z"));
  m.def("legendre_eval", &legendre_eval, py::arg("n"), py::arg("x"));
  m.def(
      "make_rule",
      [](const std::string& kind, int order) {
        RuleKind k;
        if (kind == "gauss_hermite") k = RuleKind::gauss_hermite;
        else if (kind == "gauss_laguerre") k = RuleKind::gauss_laguerre;
        else if (kind == "uniform_angle") k = RuleKind::uniform_angle;
        else throw py::value_error("unknown rule kind '" + kind + "'");
        const auto r = make_rule(k, order);
        return std::make_pair(r.nodes(), r.weights());
      },
      py::arg("kind"), py::arg("order"), "Returns (nodes, weights).");

  // fockmatrix
  m.def("commutator_defect", &commutator_defect, py::arg("n_max"), py::arg("interior_only") = true);
  m.def(
      "hamiltonian_matrix", [](const ModelParams& p, int n) { return hamiltonian_matrix(p, n).matrix(); },
      py::arg("params"), py::arg("n_max"));
  m.def(
      "ladder_matrices",
      [](int n) {
        const auto l = ladder_matrices(n);
        py::dict d;
        d["A1"] = l.a1.matrix();
        d["A2"] = l.a2.matrix();
        d["B1"] = l.b1.matrix();
        d["B2"] = l.b2.matrix();
        return d;
      },
      py::arg("n_max"));
  m.def(
      "displacement_matrix",
      [](cplx z, cplx w, int n) {
        const auto d = displacement_matrix(z, w, n);
        return py::make_tuple(d.u.matrix(), d.v.matrix(), d.truncation_warning);
      },
      py::arg("z"), py::arg("w"), py::arg("n_max"), "Returns (U, V, truncation_warning).");
  m.def("bch_defect", &bch_defect, py::arg("z"), py::arg("w"), py::arg("n_max"));
  m.def("expm", &expm, py::arg("a"));

  // wavefun
  m.def(
      "eval_phi", [](const ModelParams& p, std::pair<int, int> n, cplx x1, cplx x2) { return eval_phi(p, idx(n), x1, x2); },
      py::arg("params"), py::arg("idx"), py::arg("x1"), py::arg("x2"));
  m.def(
      "eval_psi", [](const ModelParams& p, std::pair<int, int> n, cplx x1, cplx x2) { return eval_psi(p, idx(n), x1, x2); },
      py::arg("params"), py::arg("idx"), py::arg("x1"), py::arg("x2"));
  m.def(
      "eigen_residual_fd",
      [](const ModelParams& p, std::pair<int, int> n, double half_width, double spacing, int order, double decay) {
        return eigen_residual_fd(p, idx(n), GridSpec{half_width, spacing, order, decay});
      },
      py::arg("params"), py::arg("idx"), py::arg("half_width") = 8.0, py::arg("spacing") = 0.05,
      py::arg("stencil_order") = 4, py::arg("decay_tolerance") = GridSpec{}.decay_tolerance);

  // innerprod
  m.def(
      "gram_biorthogonality",
      [](const ModelParams& p, int n, int order) {
        const auto g = gram_biorthogonality(p, n, make_rule(RuleKind::gauss_hermite, order));
        py::dict d;
        d["n_max"] = g.n_max;
        d["max_offdiag"] = g.max_offdiag;
        d["max_diag_defect"] = g.max_diag_defect;
        d["rule_order"] = g.rule_order;
        d["under_resolved"] = g.under_resolved;
        return d;
      },
      py::arg("params"), py::arg("n_max"), py::arg("rule_order") = 80);
  m.def(
      "norm_closed_form", [](const ModelParams& p, std::pair<int, int> n) { return norm_closed_form(p, idx(n)); },
      py::arg("params"), py::arg("idx"));
  m.def(
      "norm_quadrature",
      [](const ModelParams& p, std::pair<int, int> n, int order) {
        const auto phi = WaveField::phi(p, idx(n));
        return inner(phi, phi, make_rule(RuleKind::gauss_hermite, order)).real();
      },
      py::arg("params"), py::arg("idx"), py::arg("rule_order") = 120);
  m.def("prudnikov_oracle", &prudnikov_oracle, py::arg("p"), py::arg("a"), py::arg("b"), py::arg("c"), py::arg("f"),
        py::arg("n1"), py::arg("n2"));
  m.def("growth_ratio", &growth_ratio, py::arg("nu"));

  // bicoherent
  m.def(
      "normalization",
      [](cplx z, cplx w, int cutoff) {
        const auto sq = SequenceSpec::sqrt_n();
        const auto n = normalization(sq, sq, {z, w}, cutoff);
        return py::make_tuple(n.value, n.tail);
      },
      py::arg("z"), py::arg("w"), py::arg("cutoff"), "Truncated N(z, w) for alpha_n = sqrt(n): (value, tail).");
  m.def(
      "coherent_eigen_residual",
      [](const std::string& which, const ModelParams& p, cplx z, cplx w, int cutoff) {
        Ladder op;
        if (which == "A1") op = Ladder::A1;
        else if (which == "A2") op = Ladder::A2;
        else if (which == "B1dag") op = Ladder::B1dag;
        else if (which == "B2dag") op = Ladder::B2dag;
        else throw py::value_error("operator must be A1, A2, B1dag or B2dag");
        return eigen_residual(op, p, {z, w}, cutoff);
      },
      py::arg("which"), py::arg("params"), py::arg("z"), py::arg("w"), py::arg("cutoff") = 40);
  m.def(
      "coherent_check",
      [](const ModelParams& p, cplx z, cplx w, int cutoff) {
        const auto f = coherent_state(Family::phi, p, {z, w}, cutoff);
        const auto g = coherent_state(Family::psi, p, {z, w}, cutoff);
        return inner(f, g, make_rule(RuleKind::gauss_hermite, default_rule_order(cutoff + 1)));
      },
      py::arg("params"), py::arg("z"), py::arg("w"), py::arg("cutoff") = 40,
      "<phi(z,w), Psi(z,w)>; raises TruncationError when the cutoff is too small.");
  m.def(
      "moment_defect",
      [](int k_max) {
        const auto sq = SequenceSpec::sqrt_n();
        return moment_defect(moment_measure(sq), sq, k_max);
      },
      py::arg("k_max"));
  m.def(
      "resolution_residual",
      [](const ModelParams& p, std::pair<int, int> f, std::pair<int, int> g, int radial, int angular, int cutoff) {
        const auto r = resolution_residual(WaveField::oscillator(idx(f)), WaveField::oscillator(idx(g)), p, radial,
                                           angular, cutoff);
        return py::make_tuple(r.defect, r.swapped_defect);
      },
      py::arg("params"), py::arg("f"), py::arg("g"), py::arg("radial_order") = 60, py::arg("angular_order") = 64,
      py::arg("cutoff") = 40, "Defects for oscillator basis elements e_f, e_g: (defect, swapped_defect).");

  // metricmap
  m.def(
      "metric_constant",
      [](const ModelParams& p, int n) {
        const auto r = metric_constant(p, n);
        return py::make_tuple(r.constant, r.spread);
      },
      py::arg("params"), py::arg("n_max") = 5);
  m.def("similarity_check", &similarity_check, py::arg("params"), py::arg("n_max") = 4, py::arg("probe_count") = 25);
  m.def(
      "quasi_basis_residual",
      [](const ModelParams& p, std::pair<int, int> f, std::pair<int, int> g, int cutoff, int order) {
        const auto r = quasi_basis_residual(WaveField::oscillator(idx(f)), WaveField::oscillator(idx(g)), p, cutoff,
                                            make_rule(RuleKind::gauss_hermite, order));
        return py::make_tuple(r.defect, r.swapped_defect);
      },
      py::arg("params"), py::arg("f"), py::arg("g"), py::arg("cutoff") = 20, py::arg("rule_order") = 120);
  m.def(
      "dilation_growth",
      [](const ModelParams& p, int n, int order) {
        return dilation_growth(p, n, make_rule(RuleKind::gauss_hermite, order));
      },
      py::arg("params"), py::arg("n_max") = 15, py::arg("rule_order") = 120);

  // report
  m.def("suites", &all_suites);
  m.def(
      "run_suite",
      [](const std::string& name, const py::object& config) {
        RunConfig cfg = config_from(config);
        cfg.validate();
        py::list out;
        for (const auto& r : run_suite(name, cfg)) out.append(row_dict(r));
        return out;
      },
      py::arg("name"), py::arg("config") = py::none(),
      "Runs one verification suite. config is None, a JSON string or a dict.");
  m.def(
      "render_report",
      [](const std::vector<std::string>& names, const py::object& config, const std::string& format) {
        RunConfig cfg = config_from(config);
        cfg.validate();
        std::vector<ResultRow> rows;
        for (const auto& n : names) {
          auto part = run_suite(n, cfg);
          rows.insert(rows.end(), part.begin(), part.end());
        }
        return render_results(rows, cfg, format);
      },
      py::arg("suites"), py::arg("config") = py::none(), py::arg("format") = "csv");
}
