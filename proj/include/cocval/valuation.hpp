#pragma once

#include <optional>
#include <string_view>

#include "cocval/capital_solver.hpp"
#include "cocval/market.hpp"
#include "cocval/montecarlo.hpp"
#include "cocval/risk_measures.hpp"

namespace cocval {

enum class ValueMethod { closed_form, quadrature, monte_carlo, bisection };

std::string_view to_string(ValueMethod m);

// R0 = V0 + C0 together with the limited-liability option (LLO) value and the
// model-independent bounds on V0.
struct ValuationResult {
  double r0 = 0.0;
  double c0 = 0.0;
  double v0 = 0.0;
  double llo = 0.0;
  double v0_upper = 0.0;
  std::optional<double> v0_lower;

  ValueMethod r0_method = ValueMethod::closed_form;
  ValueMethod c0_method = ValueMethod::closed_form;
  ValueMethod v0_method = ValueMethod::closed_form;
  ValueMethod llo_method = ValueMethod::closed_form;

  // Zero for closed-form fields.
  double r0_se = 0.0;
  double c0_se = 0.0;
  double v0_se = 0.0;
  double llo_se = 0.0;

  double residual = 0.0;
  int iterations = 0;
};

// First two moments of Z1 and X1, enough for the V0 bounds.
struct MomentSummary {
  double mean_return = 1.0;
  double var_return = 0.0;
  double mean_claim = 0.0;
  double var_claim = 0.0;

  static MomentSummary of(const MarketSpec& market);
};

struct V0Bounds {
  double upper = 0.0;
  std::optional<double> lower;  // VaR with finite variances only
};

// upper = ((1 + eta - E[Z1]) r0 + E[X1]) / (1 + eta), dropping limited liability.
// lower = r0 - sqrt(1-alpha)/(1+eta) * sqrt(r0^2 var Z1 + var X1 + (r0 E[Z1] - E[X1])^2),
// from Cauchy-Schwarz on E[Y 1{Y >= 0}] when rho = VaR_alpha.
V0Bounds v0_bounds(double r0, const MomentSummary& moments, const RiskMeasure& rm, double eta);
V0Bounds v0_bounds(double r0, const MarketSpec& market, const RiskMeasure& rm);

// ---- Monte Carlo estimators at a given r0 over common scenarios.

// E[(r0 Z1 - X1)^+] / (1 + eta).
McEstimate value_c0_mc(double r0, const MarketSpec& market, const ScenarioSet& scen);
McEstimate value_c0_mc(double r0, const MarketSamples& samples, double w, double eta);

// (E[(r0 Z1) ^ X1] + eta r0 + r0 E[1 - Z1]) / (1 + eta). On one scenario set
// this equals r0 - value_c0_mc up to rounding.
McEstimate value_v0_mc(double r0, const MarketSpec& market, const ScenarioSet& scen);
McEstimate value_v0_mc(double r0, const MarketSamples& samples, double w, double eta);

// E[(r0 Z1 - X1)^-] / (1 + eta).
McEstimate llo_mc(double r0, const MarketSpec& market, const ScenarioSet& scen);
McEstimate llo_mc(double r0, const MarketSamples& samples, double w, double eta);

// R0 by bisection, then C0, V0 and the LLO on the same scenarios; bounds from
// the analytic moments of the market.
ValuationResult value_monte_carlo(const MarketSpec& market, const RiskMeasure& rm,
                                  const ScenarioSet& scen, double tol = kDefaultBisectionTol);
ValuationResult value_monte_carlo(const MarketSamples& samples, const MarketSpec& market,
                                  const RiskMeasure& rm, double tol = kDefaultBisectionTol);

// ---- Capped expectation E[(R0 Z1) ^ X1] = int_0^inf P(R0 Z1 > t) P(X1 > t) dt.
//
// Adaptive Gauss-Kronrod on [0, T] split at the support edges, with T grown
// until the analytic tail bound min(E[(A-T)^+], E[(X-T)^+]) is below the
// tolerance 1e-9 E[X1]. Both variables must be nonnegative (Unsupported otherwise).
double capped_expectation_quadrature(const Distribution& asset_scaled, const Distribution& claim);
// R0 Z1 with Z1 = w S1 + 1 - w taken from the market.
double capped_expectation_quadrature(double r0, const MarketSpec& market);

// ---- Gaussian model closed forms (Z1 ~ N(mu, sigma^2), X1 ~ N(gamma, nu^2)).

// delta(alpha) = phi(q)/q - alpha with q = Phi^-1(1-alpha).
double gaussian_delta(double alpha);
// E[Y^+] / E[Y] at the capital level solving rho(Y) = 0: 1 + delta(alpha)
// for VaR, Phi(psi) + phi(psi)/psi for ES.
double gaussian_payoff_factor(const RiskMeasure& rm);

ValuationResult value_gaussian(const RiskMeasure& rm, double gamma, double nu, double mu,
                               double sigma, double eta);
ValuationResult value_gaussian_var(double gamma, double nu, double mu, double sigma, double alpha,
                                   double eta);
ValuationResult value_gaussian_es(double gamma, double nu, double mu, double sigma, double alpha,
                                  double eta);

// ---- Lognormal model, VaR: R0 in closed form, V0 by quadrature.
ValuationResult value_lognormal_var(double m_x, double s_x, double m_z, double s_z, double alpha,
                                    double eta);

// ---- Pareto claim with a risk-less bond, VaR: everything in closed form.
ValuationResult pareto_riskless_valuation(double beta, double mean, double alpha, double eta);

}  // namespace cocval
