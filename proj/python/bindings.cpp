#include <sstream>

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hardy/cli.hpp"
#include "hardy/errors.hpp"
#include "hardy/expression_parser.hpp"
#include "hardy/gelfand.hpp"
#include "hardy/literals.hpp"
#include "hardy/verify.hpp"

namespace py = pybind11;
using namespace hardy;

namespace {

ComplexMatrix evaluate(const std::string& text, int n, int padding) {
  EvaluationOptions opts;
  opts.padding = padding;
  return evaluate_expression(literals::parse_expression(text), n, opts).entries();
}

SpectrumGrids grids_from(int t_points, int s_points, int circle_points) {
  SpectrumGrids g;
  g.t_points = t_points;
  g.s_points = s_points;
  g.circle_points = circle_points;
  return g;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Finite sections and essential spectra of Toeplitz, composition and multiplier operators";

  auto base = py::register_exception<Error>(m, "HardyError", PyExc_RuntimeError);
  py::register_exception<ArgumentError>(m, "ArgumentError", base.ptr());
  py::register_exception<StructuralError>(m, "StructuralError", base.ptr());
  py::register_exception<ConfigurationError>(m, "ConfigurationError", base.ptr());
  auto numerical = py::register_exception<NumericalError>(m, "NumericalError", base.ptr());
  py::register_exception<NotFredholmError>(m, "NotFredholmError", numerical.ptr());

  m.def("fourier_coefficient",
        [](const std::string& symbol, int n) { return fourier_coefficient(literals::parse_boundary_symbol(symbol), n); },
        py::arg("symbol"), py::arg("n"));
  m.def("one_sided_limits",
        [](const std::string& symbol, double angle) {
          return one_sided_limits(literals::parse_boundary_symbol(symbol), angle);
        },
        py::arg("symbol"), py::arg("angle"));
  m.def("winding_index",
        [](const std::string& symbol, int samples) {
          return winding_index(literals::parse_boundary_symbol(symbol), samples);
        },
        py::arg("symbol"), py::arg("samples") = 4096);
  m.def("cluster_set",
        [](const std::string& eta, double angle) { return cluster_set(literals::parse_eta(eta), angle).points; },
        py::arg("eta"), py::arg("angle") = 0.0);

  m.def("evaluate", &evaluate, py::arg("expression"), py::arg("n"), py::arg("padding") = -1,
        "N x N finite section of an expression literal as a complex numpy array");
  m.def("singular_values",
        [](const ComplexMatrix& a) { return singular_values(OperatorMatrix(a)); }, py::arg("matrix"));

  m.def("gelfand_evaluate",
        [](const std::string& text, double lambda, double s, std::optional<double> z,
           const std::map<std::string, Complex>& values) {
          IdealPoint p{lambda, s, {values.empty() ? "none" : "user", values}, z};
          return gelfand_evaluate(literals::parse_expression(text), p);
        },
        py::arg("expression"), py::arg("lambda_") = 0.0, py::arg("s") = 0.0, py::arg("z") = py::none(),
        py::arg("values") = std::map<std::string, Complex>{},
        "z=None stands for infinity; values maps eta labels to surrogate values");
  m.def("spectrum_product",
        [](const std::string& a, const std::string& eta, int t_points) {
          return spectrum_product(literals::parse_boundary_symbol(a), literals::parse_eta(eta),
                                  grids_from(t_points, 101, 256)).points;
        },
        py::arg("a"), py::arg("eta"), py::arg("t_points") = SpectrumGrids{}.t_points);
  m.def("spectrum_sum",
        [](const std::string& a, const std::string& eta, int t_points, int circle_points) {
          return spectrum_sum(literals::parse_boundary_symbol(a), literals::parse_eta(eta),
                              grids_from(t_points, 101, circle_points)).points;
        },
        py::arg("a"), py::arg("eta"), py::arg("t_points") = SpectrumGrids{}.t_points, py::arg("circle_points") = 256);
  m.def("spectrum_general",
        [](const std::string& text, int t_points, int circle_points) {
          return spectrum_general(literals::parse_expression(text), grids_from(t_points, 101, circle_points)).points;
        },
        py::arg("expression"), py::arg("t_points") = SpectrumGrids{}.t_points, py::arg("circle_points") = 256);
  m.def("hausdorff_distance",
        [](const std::vector<Complex>& a, const std::vector<Complex>& b) { return hausdorff_distance(a, b); },
        py::arg("a"), py::arg("b"));

  m.def("identity_residual",
        [](Complex a, int n, int block, bool printed) {
          return identity_residual(ParabolicParam(a), n, block, printed ? IdentityForm::Printed : IdentityForm::Corrected);
        },
        py::arg("a"), py::arg("n") = 256, py::arg("block") = 16, py::arg("printed") = false);
  m.def("choose_alpha", [](const std::string& eta) { return choose_alpha(literals::parse_eta(eta)); },
        py::arg("eta"));
  m.def("series_residuals",
        [](const std::string& eta_text, std::optional<double> alpha, int terms, int n, int block) {
          const EtaMap eta = literals::parse_eta(eta_text);
          const auto cfg = SeriesConfig::make(eta, alpha ? *alpha : choose_alpha(eta), terms, n, block);
          return series_approximation(eta, cfg).residuals;
        },
        py::arg("eta"), py::arg("alpha") = py::none(), py::arg("terms") = 20, py::arg("n") = 256,
        py::arg("block") = 16);
  m.def("compactness_verdict",
        [](const std::string& text, const std::vector<int>& dims) {
          return to_string(compactness_profile(literals::parse_expression(text), dims, {1}).verdict);
        },
        py::arg("expression"), py::arg("dims") = std::vector<int>{128, 256, 512});
  m.def("finite_section_eigenvalues",
        [](const std::string& text, int n) { return finite_section_eigenvalues(literals::parse_expression(text), n); },
        py::arg("expression"), py::arg("n"));

  m.def("run_cli",
        [](const std::vector<std::string>& args) {
          std::ostringstream out, err;
          const int code = cli::run(args, out, err);
          return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "Runs one command; returns (exit_code, stdout, stderr)");
}
