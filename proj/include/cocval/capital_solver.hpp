#pragma once

#include <string_view>

#include "cocval/market.hpp"
#include "cocval/montecarlo.hpp"
#include "cocval/risk_measures.hpp"

namespace cocval {

enum class SolveMethod { closed_form, bisection };

std::string_view to_string(SolveMethod m);

// Total capital requirement R0 solving rho(R0 Z1 - X1) = 0.
struct SolveReport {
  double r0 = 0.0;
  SolveMethod method = SolveMethod::closed_form;
  // rho(R0 Z1 - X1) re-evaluated at the returned R0 (for the lognormal closed
  // form: P(X1 > R0 Z1) - alpha).
  double residual = 0.0;
  int iterations = 0;
  // Asymptotic standard error of R0 for Monte Carlo solves, 0 for closed forms.
  double std_error = 0.0;
};

inline constexpr double kDefaultBisectionTol = 1e-4;

// ---- Gaussian model: X1 ~ N(gamma, nu^2), Z1 ~ N(mu, sigma^2), independent.

// gamma - r mu + k sqrt(r^2 sigma^2 + nu^2): rho(r Z1 - X1) with k the risk
// measure's Gaussian multiplier.
double gaussian_capital_function(double gamma, double nu, double mu, double sigma, double k,
                                 double r);

// Positive root of gaussian_capital_function. Requires nu, sigma >= 0 and
// mu > sigma k; throws NoSolution otherwise or when the root is negative.
double gaussian_r0(double gamma, double nu, double mu, double sigma, double k);

// The same root written as (gamma^2 - nu^2 k^2) / (mu gamma - k D); well
// conditioned when gamma > nu k, which it requires.
double gaussian_r0_conjugate(double gamma, double nu, double mu, double sigma, double k);

SolveReport solve_r0_gaussian(const RiskMeasure& rm, double gamma, double nu, double mu,
                              double sigma);
SolveReport solve_r0_gaussian_var(double gamma, double nu, double mu, double sigma, double alpha);
SolveReport solve_r0_gaussian_es(double gamma, double nu, double mu, double sigma, double alpha);

// ---- Lognormal model: X1 ~ LN(m_x, s_x^2), Z1 ~ LN(m_z, s_z^2), VaR only.
// Z1 itself must be lognormal; a mixture w S1 + 1 - w with 0 < w < 1 is not.
SolveReport solve_r0_lognormal_var(double m_x, double s_x, double m_z, double s_z, double alpha);

// ---- Monte Carlo bisection on g(r) = rho_empirical(r Z1 - X1).
//
// g is continuous and non-increasing in r when Z1 >= 0 on every scenario.
// The bracket starts at [0, rho(-X1)] and doubles until g <= 0 at the upper
// end (NoSolution past 2^60); bisection then stops once the bracket width is
// at most tol * max(1, r) and reports the midpoint. A riskless Z1 = c
// short-circuits to rho(-X1) / c.
SolveReport solve_r0_numeric(const MarketSpec& market, const RiskMeasure& rm,
                             const ScenarioSet& scen, double tol = kDefaultBisectionTol);
SolveReport solve_r0_numeric(const MarketSamples& samples, double w, const RiskMeasure& rm,
                             double tol = kDefaultBisectionTol);

// Empirical rho(r Z1 - X1) on drawn samples.
double empirical_capital_function(const MarketSamples& samples, double w, const RiskMeasure& rm,
                                  double r);

// Delta-method standard error of an empirical root R0. For VaR the loss
// density at 0 comes from a sqrt(n)-spacing order-statistic estimate and
// dg/dr from the mean of Z1 over the same scenarios; for ES it uses the
// asymptotic ES variance and the mean of Z1 over the tail.
double capital_std_error(const MarketSamples& samples, double w, const RiskMeasure& rm, double r0);

}  // namespace cocval
