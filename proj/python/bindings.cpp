#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "heatctl/basis.hpp"
#include "heatctl/control.hpp"
#include "heatctl/errors.hpp"
#include "heatctl/heat_solver.hpp"
#include "heatctl/io.hpp"
#include "heatctl/radial.hpp"
#include "heatctl/special_functions.hpp"
#include "heatctl/transform.hpp"

namespace py = pybind11;
using namespace heatctl;

namespace {

RadialProfile exp_mixture(const std::vector<std::pair<double, double>>& terms) {
  ExpMixture m;
  for (const auto& [c, rate] : terms) m.terms.push_back({c, rate});
  return m;
}

RadialProfile polyexp_mixture(const std::vector<std::tuple<double, int, double>>& terms) {
  PolyExpMixture m;
  for (const auto& [c, p, rate] : terms) m.terms.push_back({c, p, rate});
  return m;
}

}  // namespace

PYBIND11_MODULE(_heatctl, m) {
  m.doc() = "Radial heat-equation control synthesis";

  auto value_error = py::handle(PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", value_error);
  py::register_exception<PreconditionError>(m, "PreconditionError", value_error);
  py::register_exception<ParseError>(m, "ParseError", value_error);
  py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_RuntimeError);

  py::class_<RadialProfile>(m, "RadialProfile")
      .def(py::init<>())
      .def_static("exp_mixture", &exp_mixture, py::arg("terms"), "Terms (coefficient, rate) of sum c e^{-rate r}.")
      .def_static("polyexp_mixture", &polyexp_mixture, py::arg("terms"),
                  "Terms (coefficient, power, rate) of sum c r^p e^{-rate r}.")
      .def_static(
          "sampled",
          [](std::vector<double> grid, std::vector<double> values, std::optional<double> tail_rate) {
            return RadialProfile(SampledProfile(std::move(grid), std::move(values), tail_rate));
          },
          py::arg("grid"), py::arg("values"), py::arg("tail_rate") = py::none())
      .def_static("from_json", [](const std::string& text) { return profile_from_json(Json::parse(text)); })
      .def("to_json", [](const RadialProfile& g) { return to_json(g).dump(); })
      .def_property_readonly("kind", [](const RadialProfile& g) { return std::string(to_string(g.kind())); })
      .def_property_readonly("is_closed_form", &RadialProfile::is_closed_form)
      .def("__call__", &RadialProfile::eval, py::arg("r"))
      .def("__call__", [](const RadialProfile& g, const std::vector<double>& r) {
        std::vector<double> out;
        for (double x : r) out.push_back(g.eval(x));
        return out;
      })
      .def("__repr__", [](const RadialProfile& g) { return "RadialProfile(" + to_json(g).dump() + ")"; });

  py::class_<Control>(m, "Control")
      .def(py::init<double, std::vector<double>, std::vector<double>>(), py::arg("T"), py::arg("breakpoints"),
           py::arg("levels"))
      .def_static("constant", &Control::constant, py::arg("T"), py::arg("level"))
      .def_static("zero", &Control::zero, py::arg("T"))
      .def_static("from_json", [](const std::string& text) { return control_from_json(Json::parse(text)); })
      .def("to_json", [](const Control& u) { return to_json(u).dump(); })
      .def_property_readonly("T", &Control::horizon)
      .def_property_readonly("breakpoints", &Control::breakpoints)
      .def_property_readonly("levels", &Control::levels)
      .def_property_readonly("sup_norm", &Control::sup_norm)
      .def("__call__", &Control::value, py::arg("t"));

  py::class_<ErrorBudget>(m, "ErrorBudget")
      .def_readonly("tail_term", &ErrorBudget::tail_term)
      .def_readonly("mollification_term", &ErrorBudget::mollification_term)
      .def_readonly("total", &ErrorBudget::total);

  py::class_<EndStateReport>(m, "EndStateReport")
      .def_readonly("target_norm", &EndStateReport::target_norm)
      .def_readonly("residual_norm", &EndStateReport::residual_norm)
      .def_readonly("plane_residual", &EndStateReport::plane_residual)
      .def_readonly("budget", &EndStateReport::budget);

  // special functions
  m.def("bessel_j0", &bessel_j0, py::arg("x"));
  m.def("exp_integral_e1", &exp_integral_e1, py::arg("x"));
  m.def("laguerre", &laguerre, py::arg("n"), py::arg("x"));

  // radial
  m.def("l2_norm_halfline", &l2_norm_halfline, py::arg("g"), py::arg("tol") = 1e-12);
  m.def("inner_product", &inner_product, py::arg("f"), py::arg("g"), py::arg("tol") = 1e-12);
  m.def("radial_moment", &radial_moment, py::arg("g"), py::arg("n"), py::arg("tol") = 1e-12);
  m.def("linear_combination", &linear_combination, py::arg("a"), py::arg("f"), py::arg("b"), py::arg("g"));
  m.def("log_spaced_grid", &log_spaced_grid, py::arg("lo"), py::arg("hi"), py::arg("n"));

  // transform
  m.def("phi", &phi, py::arg("g"), py::arg("tol") = 1e-11);
  m.def("phi_quadrature_reference", &phi_quadrature_reference, py::arg("g"), py::arg("rho"), py::arg("tol") = 1e-10);

  // basis
  m.def("psi_n", [](double T, int n) { return psi_n(BasisContext(T), n); }, py::arg("T"), py::arg("n"));
  m.def("psi_hat_n", [](double T, int n) { return psi_hat_n(BasisContext(T), n); }, py::arg("T"), py::arg("n"));
  m.def("phi_n_l", [](double T, int n, int l) { return phi_n_l(BasisContext(T), n, l); }, py::arg("T"), py::arg("n"),
        py::arg("l"));
  m.def("deviation_bound", [](double T, int n, int l) { return deviation_bound(BasisContext(T), n, l); },
        py::arg("T"), py::arg("n"), py::arg("l"));
  m.def(
      "expand",
      [](const RadialProfile& g, double T, int N) {
        const auto c = expand(g, BasisContext(T), N);
        return std::make_pair(c.g, c.d);
      },
      py::arg("g"), py::arg("T"), py::arg("N"), "Laguerre coefficients g_n and their binomial transform d_k.");
  m.def("expansion_tail", [](const RadialProfile& g, double T, int N) { return expansion_tail(g, BasisContext(T), N); },
        py::arg("g"), py::arg("T"), py::arg("N"));

  // control
  m.def("synthesize", &synthesize, py::arg("g"), py::arg("T"), py::arg("N"), py::arg("l"));
  m.def("mollified_delta_derivative", &mollified_delta_derivative, py::arg("n"), py::arg("l"), py::arg("T"));
  m.def("gamma_moments", [](const RadialProfile& g, double T, int N) { return gamma_moments(g, T, N).values; },
        py::arg("g"), py::arg("T"), py::arg("N"));
  m.def("omega_moments",
        [](const RadialProfile& g, double T, int N) { return omega_moments(PlaneFieldRadial{g}, T, N).values; },
        py::arg("g"), py::arg("T"), py::arg("N"));
  m.def("control_moments", [](const Control& u, int N) { return control_moments(u, N).values; }, py::arg("u"),
        py::arg("N"));
  m.def("necessary_condition", py::overload_cast<const RadialProfile&, double>(&necessary_condition), py::arg("g"),
        py::arg("T"));
  m.def("entire_eval", &entire_eval, py::arg("u"), py::arg("z"));
  m.def("entire_bound", &entire_bound, py::arg("L"), py::arg("T"), py::arg("z"));

  // heat solver
  m.def("free_evolution", &free_evolution, py::arg("g0"), py::arg("t"));
  m.def("controlled_term", &controlled_term, py::arg("u"), py::arg("t"), py::arg("r"));
  m.def("end_state", &end_state, py::arg("u"), py::arg("g0"), py::arg("T"), py::arg("grid"));
  m.def("error_budget", &error_budget, py::arg("g"), py::arg("T"), py::arg("N"), py::arg("l"));
  m.def("report",
        py::overload_cast<const RadialProfile&, const Control&, double, int, int>(&report),
        py::arg("g"), py::arg("u"), py::arg("T"), py::arg("N"), py::arg("l"));
  m.def("bounded_growth_check", &bounded_growth_check, py::arg("u"), py::arg("t_grid"), py::arg("points") = 600);
}
