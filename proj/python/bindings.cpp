#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "cocval/analysis.hpp"
#include "cocval/capital_solver.hpp"
#include "cocval/distributions.hpp"
#include "cocval/errors.hpp"
#include "cocval/montecarlo.hpp"
#include "cocval/risk_measures.hpp"
#include "cocval/valuation.hpp"

namespace py = pybind11;
using namespace cocval;

namespace {

RiskMeasure make_risk(const std::string& kind, double alpha) {
  return RiskMeasure(parse_risk_kind(kind), alpha);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Cost-of-capital valuation with risky buffer capital";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<NoSolution>(m, "NoSolution", PyExc_RuntimeError);
  py::register_exception<Unsupported>(m, "Unsupported", PyExc_NotImplementedError);

  // Distributions are constructed through factories so validation always runs.
  py::class_<Distribution>(m, "Distribution")
      .def_property_readonly("kind", [](const Distribution& d) { return std::string(to_string(d.kind())); })
      .def("cdf", [](const Distribution& d, double x) { return cdf(d, x); })
      .def("survival", [](const Distribution& d, double x) { return survival(d, x); })
      .def("pdf", [](const Distribution& d, double x) { return pdf(d, x); })
      .def("quantile", [](const Distribution& d, double p) { return quantile(d, p); })
      .def("mean", [](const Distribution& d) { return mean(d); })
      .def("variance", [](const Distribution& d) { return variance(d); })
      .def("stop_loss", [](const Distribution& d, double k) { return stop_loss(d, k); })
      .def("scaled", [](const Distribution& d, double a) { return scaled(d, a); })
      .def(py::self == py::self)
      .def("__repr__", [](const Distribution& d) { return describe(d); });

  m.def("normal", [](double mean, double sd) { return Distribution(Normal{mean, sd}); },
        py::arg("mean"), py::arg("sd"));
  m.def("lognormal", [](double mu_log, double sd_log) { return Distribution(Lognormal{mu_log, sd_log}); },
        py::arg("mu_log"), py::arg("sd_log"));
  m.def("lognormal_from_moments",
        [](double mean, double sd) { return Distribution(lognormal_from_moments(mean, sd)); },
        py::arg("mean"), py::arg("sd"));
  m.def("pareto", [](double x_m, double beta) { return Distribution(ParetoTypeI{x_m, beta}); },
        py::arg("x_m"), py::arg("beta"));
  m.def("pareto_from_moments",
        [](double mean, double sd) { return Distribution(pareto_from_moments(mean, sd)); },
        py::arg("mean"), py::arg("sd"));
  m.def("pareto_from_mean_beta",
        [](double mean, double beta) { return Distribution(pareto_from_mean_beta(mean, beta)); },
        py::arg("mean"), py::arg("beta"));
  m.def("degenerate", [](double value) { return Distribution(Degenerate{value}); },
        py::arg("value"));

  py::class_<RiskMeasure>(m, "RiskMeasure")
      .def(py::init(&make_risk), py::arg("kind"), py::arg("alpha"))
      .def_property_readonly("kind", [](const RiskMeasure& r) { return std::string(to_string(r.kind())); })
      .def_property_readonly("alpha", &RiskMeasure::alpha)
      .def("gaussian_multiplier", &RiskMeasure::gaussian_multiplier)
      .def("__repr__", [](const RiskMeasure& r) {
        std::ostringstream os;
        os << "RiskMeasure('" << to_string(r.kind()) << "', " << r.alpha() << ")";
        return os.str();
      });

  m.def("var_empirical", [](std::vector<double> y, double a) { return var_empirical(y, a); },
        py::arg("sample"), py::arg("alpha"));
  m.def("es_empirical", [](std::vector<double> y, double a) { return es_empirical(y, a); },
        py::arg("sample"), py::arg("alpha"));
  m.def("psi", &psi, py::arg("alpha"));

  py::class_<MarketSpec>(m, "MarketSpec")
      .def(py::init<Distribution, Distribution, double, double>(), py::arg("claim"),
           py::arg("asset"), py::arg("w"), py::arg("eta") = 0.06)
      .def_readonly("claim", &MarketSpec::claim)
      .def_readonly("asset", &MarketSpec::asset)
      .def_readonly("w", &MarketSpec::w)
      .def_readonly("eta", &MarketSpec::eta)
      .def("with_weight", &MarketSpec::with_weight, py::arg("w"))
      .def("mean_return", &MarketSpec::mean_return);

  py::class_<ScenarioSet>(m, "ScenarioSet")
      .def_readonly("n", &ScenarioSet::n)
      .def_readonly("seed", &ScenarioSet::seed)
      .def_readonly("u_s", &ScenarioSet::u_s)
      .def_readonly("u_x", &ScenarioSet::u_x);
  m.def("generate", &generate, py::arg("n"), py::arg("seed"));

  py::class_<McEstimate>(m, "McEstimate")
      .def_readonly("value", &McEstimate::value)
      .def_readonly("std_error", &McEstimate::std_error)
      .def_readonly("n", &McEstimate::n);

  py::class_<SolveReport>(m, "SolveReport")
      .def_readonly("r0", &SolveReport::r0)
      .def_property_readonly("method", [](const SolveReport& s) { return std::string(to_string(s.method)); })
      .def_readonly("residual", &SolveReport::residual)
      .def_readonly("iterations", &SolveReport::iterations)
      .def_readonly("std_error", &SolveReport::std_error);

  m.def("solve_r0_gaussian", &solve_r0_gaussian, py::arg("risk"), py::arg("gamma"), py::arg("nu"),
        py::arg("mu"), py::arg("sigma"));
  m.def("solve_r0_lognormal_var", &solve_r0_lognormal_var, py::arg("m_x"), py::arg("s_x"),
        py::arg("m_z"), py::arg("s_z"), py::arg("alpha"));
  m.def("solve_r0_numeric",
        py::overload_cast<const MarketSpec&, const RiskMeasure&, const ScenarioSet&, double>(
            &solve_r0_numeric),
        py::arg("market"), py::arg("risk"), py::arg("scenarios"),
        py::arg("tol") = kDefaultBisectionTol);

  py::class_<ValuationResult>(m, "ValuationResult")
      .def_readonly("r0", &ValuationResult::r0)
      .def_readonly("c0", &ValuationResult::c0)
      .def_readonly("v0", &ValuationResult::v0)
      .def_readonly("llo", &ValuationResult::llo)
      .def_readonly("v0_upper", &ValuationResult::v0_upper)
      .def_readonly("v0_lower", &ValuationResult::v0_lower)
      .def_readonly("r0_se", &ValuationResult::r0_se)
      .def_readonly("c0_se", &ValuationResult::c0_se)
      .def_readonly("v0_se", &ValuationResult::v0_se)
      .def_readonly("llo_se", &ValuationResult::llo_se)
      .def_readonly("residual", &ValuationResult::residual)
      .def_readonly("iterations", &ValuationResult::iterations)
      .def_property_readonly("methods", [](const ValuationResult& v) {
        py::dict d;
        d["r0"] = std::string(to_string(v.r0_method));
        d["c0"] = std::string(to_string(v.c0_method));
        d["v0"] = std::string(to_string(v.v0_method));
        d["llo"] = std::string(to_string(v.llo_method));
        return d;
      });

  m.def("value_gaussian", &value_gaussian, py::arg("risk"), py::arg("gamma"), py::arg("nu"),
        py::arg("mu"), py::arg("sigma"), py::arg("eta") = 0.06);
  m.def("value_lognormal_var", &value_lognormal_var, py::arg("m_x"), py::arg("s_x"),
        py::arg("m_z"), py::arg("s_z"), py::arg("alpha"), py::arg("eta") = 0.06);
  m.def("pareto_riskless_valuation", &pareto_riskless_valuation, py::arg("beta"),
        py::arg("mean") = 1.0, py::arg("alpha") = 0.005, py::arg("eta") = 0.06);
  m.def("value_closed_form", &value_closed_form, py::arg("market"), py::arg("risk"));
  m.def("value_monte_carlo",
        py::overload_cast<const MarketSpec&, const RiskMeasure&, const ScenarioSet&, double>(
            &value_monte_carlo),
        py::arg("market"), py::arg("risk"), py::arg("scenarios"),
        py::arg("tol") = kDefaultBisectionTol);
  m.def("capped_expectation_quadrature",
        py::overload_cast<double, const MarketSpec&>(&capped_expectation_quadrature),
        py::arg("r0"), py::arg("market"));

  py::class_<SweepRow>(m, "SweepRow")
      .def_readonly("w", &SweepRow::w)
      .def_readonly("feasible", &SweepRow::feasible)
      .def_readonly("note", &SweepRow::note)
      .def_readonly("value", &SweepRow::value);

  py::class_<SweepResult>(m, "SweepResult")
      .def_readonly("grid", &SweepResult::grid)
      .def_readonly("rows", &SweepResult::rows)
      .def_readonly("w_star", &SweepResult::w_star)
      .def_readonly("w_hat_numeric", &SweepResult::w_hat_numeric)
      .def_readonly("w_hat_closed", &SweepResult::w_hat_closed)
      .def("to_csv", [](const SweepResult& r) {
        std::ostringstream os;
        write_sweep_csv(os, r);
        return os.str();
      });

  m.def("make_grid", &make_grid, py::arg("step"));
  m.def(
      "sweep",
      [](const Distribution& claim, const Distribution& asset, const RiskMeasure& rm,
         const std::vector<double>& grid, const ScenarioSet& scen, double eta) {
        return sweep(MarketTemplate{claim, asset, eta}, rm, grid, scen);
      },
      py::arg("claim"), py::arg("asset"), py::arg("risk"), py::arg("grid"), py::arg("scenarios"),
      py::arg("eta") = 0.06);
  m.def(
      "sweep_gaussian_closed_form",
      [](const Distribution& claim, const Distribution& asset, const RiskMeasure& rm,
         const std::vector<double>& grid, double eta) {
        return sweep_gaussian_closed_form(MarketTemplate{claim, asset, eta}, rm, grid);
      },
      py::arg("claim"), py::arg("asset"), py::arg("risk"), py::arg("grid"), py::arg("eta") = 0.06);
  m.def("what_gaussian", &what_gaussian, py::arg("risk"), py::arg("gamma"), py::arg("nu"),
        py::arg("mu"), py::arg("sigma"));
  m.def("negative_loading_threshold", &negative_loading_threshold, py::arg("r0_w"),
        py::arg("mean_claim"), py::arg("mean_asset"), py::arg("eta"));
}
