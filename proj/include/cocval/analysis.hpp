#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cocval/distributions.hpp"
#include "cocval/montecarlo.hpp"
#include "cocval/risk_measures.hpp"
#include "cocval/valuation.hpp"

namespace cocval {

// Everything in a MarketSpec except the weight.
struct MarketTemplate {
  Distribution claim;
  Distribution asset;
  double eta = 0.06;

  MarketSpec at(double w) const { return {claim, asset, w, eta}; }
};

struct SweepRow {
  double w = 0.0;
  bool feasible = true;
  std::string note;  // solver diagnostic for infeasible rows
  ValuationResult value;
};

struct SweepResult {
  std::vector<double> grid;
  std::vector<SweepRow> rows;
  double w_star = 0.0;                 // smallest grid w attaining min R0
  std::optional<double> w_hat_numeric;  // first up-crossing of R0(w) = R0(0)
  std::optional<double> w_hat_closed;   // Gaussian closed form, when applicable
};

// {0, step, 2 step, ..., 1}; 1 is always the last point.
std::vector<double> make_grid(double step);

// Monte Carlo sweep: every weight is solved and valued on the same scenarios.
SweepResult sweep(const MarketTemplate& market, const RiskMeasure& rm, std::span<const double> grid,
                  const ScenarioSet& scen, double tol = kDefaultBisectionTol);

// Closed-form sweep for a Normal claim and a Normal (or degenerate) asset;
// Z1^w ~ N(w mu + 1 - w, (w sigma)^2).
SweepResult sweep_gaussian_closed_form(const MarketTemplate& market, const RiskMeasure& rm,
                                       std::span<const double> grid);

// Closed-form valuation when the market admits one: Normal claim with a
// Normal or riskless return; lognormal claim with a lognormal (w = 1) or
// riskless return under VaR; Pareto claim with the risk-less bond under VaR.
// Returns nullopt otherwise.
std::optional<ValuationResult> value_closed_form(const MarketSpec& market, const RiskMeasure& rm);

// Recomputes w_star and w_hat_numeric from the feasible prefix of `rows`.
void summarize(SweepResult& result);

// Mutual-benefit threshold: R0^w < R0^0 on (0, w_hat). Requires nu, sigma > 0,
// gamma > nu k and mu > max(1, sigma k) with k = Phi^-1(1-alpha) (VaR) or psi (ES).
double what_gaussian(const RiskMeasure& rm, double gamma, double nu, double mu, double sigma);
double what_gaussian_var(double gamma, double nu, double mu, double sigma, double alpha);
double what_gaussian_es(double gamma, double nu, double mu, double sigma, double alpha);

// Right-hand side of  w > eta/(E[S1]-1) * (R0^w - E[X1]) / R0^w, beyond which
// the premium carries a negative safety loading in any model. +infinity when
// E[S1] <= 1.
double negative_loading_threshold(double r0_w, double mean_claim, double mean_asset, double eta);

struct MutualBenefit {
  bool condition_c = false;  // R0^w mu_w >= R0^0       => C0^w >= C0^0
  bool condition_v = false;  // ... and R0^0 >= R0^w   => V0^w <= V0^0
};

MutualBenefit check_mutual_benefit(double r0_w, double mu_w, double r0_0);

// CSV with header `w,r0,c0,v0,v0_upper,v0_lower,llo,r0_se,c0_se,v0_se`, one row
// per grid point, then a blank line and a `w_star,w_hat_numeric,w_hat_closed`
// summary block. Absent values are empty fields, infeasible rows carry nan.
void write_sweep_csv(std::ostream& os, const SweepResult& result);

// Shortest round-trip-safe text with at most 15 significant digits, '.' decimal point.
std::string format_number(double x);

}  // namespace cocval
