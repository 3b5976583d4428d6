#include "cocval/valuation.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "cocval/errors.hpp"
#include "cocval/normal.hpp"

namespace cocval {

std::string_view to_string(ValueMethod m) {
  switch (m) {
    case ValueMethod::closed_form: return "closed_form";
    case ValueMethod::quadrature: return "quadrature";
    case ValueMethod::monte_carlo: return "monte_carlo";
    case ValueMethod::bisection: return "bisection";
  }
  return "unknown";
}

MomentSummary MomentSummary::of(const MarketSpec& market) {
  return {market.mean_return(), market.variance_return(), mean(market.claim),
          variance(market.claim)};
}

V0Bounds v0_bounds(double r0, const MomentSummary& m, const RiskMeasure& rm, double eta) {
  V0Bounds b;
  b.upper = ((1.0 + eta - m.mean_return) * r0 + m.mean_claim) / (1.0 + eta);
  if (rm.kind() == RiskKind::var && std::isfinite(m.var_return) && std::isfinite(m.var_claim)) {
    const double gap = r0 * m.mean_return - m.mean_claim;
    const double second = r0 * r0 * m.var_return + m.var_claim + gap * gap;
    b.lower = r0 - std::sqrt(1.0 - rm.alpha()) / (1.0 + eta) * std::sqrt(second);
  }
  return b;
}

V0Bounds v0_bounds(double r0, const MarketSpec& market, const RiskMeasure& rm) {
  return v0_bounds(r0, MomentSummary::of(market), rm, market.eta);
}

// ---------------------------------------------------------------------------
// Monte Carlo

namespace {

McEstimate discounted(McEstimate e, double eta) {
  e.value /= 1.0 + eta;
  e.std_error /= 1.0 + eta;
  return e;
}

}  // namespace

McEstimate value_c0_mc(double r0, const MarketSamples& samples, double w, double eta) {
  return discounted(estimate_mean_positive_part(net_worth_sample(samples, w, r0)), eta);
}

McEstimate value_v0_mc(double r0, const MarketSamples& samples, double w, double eta) {
  std::vector<double> term(samples.size());
  for (std::size_t i = 0; i < term.size(); ++i) {
    const double z = portfolio_return(w, samples.asset[i]);
    term[i] = std::min(r0 * z, samples.claim[i]) + r0 * (1.0 - z);
  }
  McEstimate e = estimate_mean(term);
  e.value += eta * r0;
  return discounted(e, eta);
}

McEstimate llo_mc(double r0, const MarketSamples& samples, double w, double eta) {
  return discounted(estimate_mean_negative_part(net_worth_sample(samples, w, r0)), eta);
}

McEstimate value_c0_mc(double r0, const MarketSpec& market, const ScenarioSet& scen) {
  return value_c0_mc(r0, draw_market(scen, market.claim, market.asset), market.w, market.eta);
}

McEstimate value_v0_mc(double r0, const MarketSpec& market, const ScenarioSet& scen) {
  return value_v0_mc(r0, draw_market(scen, market.claim, market.asset), market.w, market.eta);
}

McEstimate llo_mc(double r0, const MarketSpec& market, const ScenarioSet& scen) {
  return llo_mc(r0, draw_market(scen, market.claim, market.asset), market.w, market.eta);
}

ValuationResult value_monte_carlo(const MarketSamples& samples, const MarketSpec& market,
                                  const RiskMeasure& rm, double tol) {
  const SolveReport sol = solve_r0_numeric(samples, market.w, rm, tol);
  const McEstimate c0 = value_c0_mc(sol.r0, samples, market.w, market.eta);
  const McEstimate v0 = value_v0_mc(sol.r0, samples, market.w, market.eta);
  const McEstimate llo = llo_mc(sol.r0, samples, market.w, market.eta);
  const V0Bounds bounds = v0_bounds(sol.r0, market, rm);

  ValuationResult res;
  res.r0 = sol.r0;
  res.c0 = c0.value;
  res.v0 = v0.value;
  res.llo = llo.value;
  res.v0_upper = bounds.upper;
  res.v0_lower = bounds.lower;
  res.r0_method = ValueMethod::bisection;
  res.c0_method = res.v0_method = res.llo_method = ValueMethod::monte_carlo;
  res.r0_se = sol.std_error;
  res.c0_se = c0.std_error;
  res.v0_se = v0.std_error;
  res.llo_se = llo.std_error;
  res.residual = sol.residual;
  res.iterations = sol.iterations;
  return res;
}

ValuationResult value_monte_carlo(const MarketSpec& market, const RiskMeasure& rm,
                                  const ScenarioSet& scen, double tol) {
  return value_monte_carlo(draw_market(scen, market.claim, market.asset), market, rm, tol);
}

// ---------------------------------------------------------------------------
// Quadrature

namespace {

using Fn = std::function<double(double)>;

constexpr double kTruncationLevel = 1e-12;
constexpr double kRelTol = 1e-9;

// int_0^inf surv_a(t) surv_x(t) dt. `tail_a(T)` and `tail_x(T)` return
// int_T^inf of the respective survival function.
double integrate_survival_product(const Fn& surv_a, const Fn& surv_x, const Fn& tail_a,
                                  const Fn& tail_x, double upper, std::vector<double> breaks,
                                  double scale) {
  const double abs_tol = kRelTol * scale;
  double T = std::max(upper, 1e-300);
  for (int grow = 0; grow < 200; ++grow) {
    if (std::min(tail_a(T), tail_x(T)) <= 0.25 * abs_tol) break;
    T *= 2.0;
  }
  breaks.push_back(0.0);
  breaks.push_back(T);
  std::erase_if(breaks, [T](double b) { return !(b >= 0.0 && b <= T) || !std::isfinite(b); });
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

  auto f = [&](double t) { return surv_a(t) * surv_x(t); };
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    double err = 0.0;
    total += boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
        f, breaks[i], breaks[i + 1], 30, 1e-13, &err);
  }
  return total;
}

void require_nonnegative(const Distribution& d, const char* what) {
  if (!is_nonnegative(d)) {
    throw Unsupported(std::string(what) +
                      " has negative support; survival quadrature needs nonnegative variables");
  }
}

}  // namespace

double capped_expectation_quadrature(const Distribution& asset_scaled, const Distribution& claim) {
  require_nonnegative(asset_scaled, "asset");
  require_nonnegative(claim, "claim");
  const double scale = std::max(mean(claim), 1e-300);
  const double upper = std::min(quantile(asset_scaled, 1.0 - kTruncationLevel),
                                quantile(claim, 1.0 - kTruncationLevel));
  return integrate_survival_product(
      [&](double t) { return survival(asset_scaled, t); },
      [&](double t) { return survival(claim, t); },
      [&](double t) { return stop_loss(asset_scaled, t); },
      [&](double t) { return stop_loss(claim, t); }, upper,
      {support_min(asset_scaled), support_min(claim)}, scale);
}

double capped_expectation_quadrature(double r0, const MarketSpec& market) {
  if (r0 < 0.0) throw DomainError("capped expectation: r0 must be >= 0");
  if (r0 == 0.0) return 0.0;
  if (market.riskless()) {
    return capped_expectation_quadrature(Degenerate{r0 * market.riskless_return()},
                                         market.claim);
  }
  require_nonnegative(market.asset, "asset");
  require_nonnegative(market.claim, "claim");
  const double w = market.w;
  // P(r0 (w S + 1 - w) > t) = P(S > s(t)) with s(t) = (t / r0 - 1 + w) / w.
  auto level = [r0, w](double t) { return (t / r0 - 1.0 + w) / w; };
  const double scale = std::max(mean(market.claim), 1e-300);
  const double upper =
      std::min(r0 * portfolio_return(w, quantile(market.asset, 1.0 - kTruncationLevel)),
               quantile(market.claim, 1.0 - kTruncationLevel));
  return integrate_survival_product(
      [&](double t) { return survival(market.asset, level(t)); },
      [&](double t) { return survival(market.claim, t); },
      [&](double t) { return r0 * w * stop_loss(market.asset, level(t)); },
      [&](double t) { return stop_loss(market.claim, t); }, upper,
      {r0 * portfolio_return(w, support_min(market.asset)), support_min(market.claim)}, scale);
}

// ---------------------------------------------------------------------------
// Closed forms

double gaussian_delta(double alpha) {
  const double q = normal::quantile(1.0 - alpha);
  return normal::pdf(q) / q - alpha;
}

double gaussian_payoff_factor(const RiskMeasure& rm) {
  if (rm.kind() == RiskKind::var) return 1.0 + gaussian_delta(rm.alpha());
  const double p = psi(rm.alpha());
  return normal::cdf(p) + normal::pdf(p) / p;
}

ValuationResult value_gaussian(const RiskMeasure& rm, double gamma, double nu, double mu,
                               double sigma, double eta) {
  if (!(eta > 0.0)) throw DomainError("eta must be > 0");
  const SolveReport sol = solve_r0_gaussian(rm, gamma, nu, mu, sigma);
  const double r0 = sol.r0;
  const double factor = gaussian_payoff_factor(rm);
  const double buffer = r0 * mu - gamma;  // E[R0 Z1 - X1]

  ValuationResult res;
  res.r0 = r0;
  res.residual = sol.residual;
  res.c0 = buffer * factor / (1.0 + eta);
  res.v0 = gamma * factor / (1.0 + eta) + r0 * (1.0 + eta - mu * factor) / (1.0 + eta);
  res.llo = (factor - 1.0) * buffer / (1.0 + eta);
  const V0Bounds b = v0_bounds(r0, MomentSummary{mu, sigma * sigma, gamma, nu * nu}, rm, eta);
  res.v0_upper = b.upper;
  res.v0_lower = b.lower;
  return res;
}

ValuationResult value_gaussian_var(double gamma, double nu, double mu, double sigma, double alpha,
                                   double eta) {
  return value_gaussian(RiskMeasure::value_at_risk(alpha), gamma, nu, mu, sigma, eta);
}

ValuationResult value_gaussian_es(double gamma, double nu, double mu, double sigma, double alpha,
                                  double eta) {
  return value_gaussian(RiskMeasure::expected_shortfall(alpha), gamma, nu, mu, sigma, eta);
}

ValuationResult value_lognormal_var(double m_x, double s_x, double m_z, double s_z, double alpha,
                                    double eta) {
  if (!(eta > 0.0)) throw DomainError("eta must be > 0");
  const RiskMeasure rm = RiskMeasure::value_at_risk(alpha);
  const SolveReport sol = solve_r0_lognormal_var(m_x, s_x, m_z, s_z, alpha);
  const double r0 = sol.r0;
  const Distribution claim = Lognormal{m_x, s_x};
  const double mean_z = std::exp(m_z + 0.5 * s_z * s_z);

  double capped = 0.0;
  if (s_z == 0.0) {
    capped = capped_expectation_quadrature(Degenerate{r0 * mean_z}, claim);
  } else {
    // P(R0 Z1 > t) = survival((log t - m_x - q sqrt(s_z^2 + s_x^2)) / s_z)
    const double shift = m_x + normal::quantile(1.0 - alpha) * std::sqrt(s_z * s_z + s_x * s_x);
    const Distribution scaled_asset = Lognormal{shift, s_z};
    auto surv_a = [&](double t) {
      return t <= 0.0 ? 1.0 : normal::survival((std::log(t) - shift) / s_z);
    };
    auto surv_x = [&](double t) {
      return t <= 0.0 ? 1.0 : normal::survival((std::log(t) - m_x) / s_x);
    };
    capped = integrate_survival_product(
        surv_a, surv_x, [&](double t) { return stop_loss(scaled_asset, t); },
        [&](double t) { return stop_loss(claim, t); }, quantile(claim, 1.0 - kTruncationLevel),
        {std::exp(shift)}, mean(claim));
  }

  ValuationResult res;
  res.r0 = r0;
  res.residual = sol.residual;
  res.v0 = (r0 * (eta + 1.0 - mean_z) + capped) / (1.0 + eta);
  res.c0 = r0 - res.v0;
  const double var_z = std::expm1(s_z * s_z) * mean_z * mean_z;
  const V0Bounds b = v0_bounds(r0, MomentSummary{mean_z, var_z, mean(claim), variance(claim)},
                               rm, eta);
  res.v0_upper = b.upper;
  res.v0_lower = b.lower;
  res.llo = res.v0_upper - res.v0;
  res.v0_method = ValueMethod::quadrature;
  res.c0_method = ValueMethod::quadrature;
  res.llo_method = ValueMethod::quadrature;
  return res;
}

ValuationResult pareto_riskless_valuation(double beta, double mean_claim, double alpha,
                                          double eta) {
  if (!(eta > 0.0)) throw DomainError("eta must be > 0");
  const RiskMeasure rm = RiskMeasure::value_at_risk(alpha);
  const ParetoTypeI p = pareto_from_mean_beta(mean_claim, beta);
  const double tail = std::pow(alpha, -1.0 / beta);  // alpha^(-1/beta)

  ValuationResult res;
  res.r0 = p.x_m * tail;
  res.llo = alpha * tail / beta * mean_claim / (1.0 + eta);
  res.v0 = mean_claim / (1.0 + eta) * (1.0 + tail / beta * (eta * (beta - 1.0) - alpha));
  res.c0 = res.r0 - res.v0;
  const Distribution claim = p;
  const V0Bounds b =
      v0_bounds(res.r0, MomentSummary{1.0, 0.0, mean_claim, variance(claim)}, rm, eta);
  res.v0_upper = b.upper;
  res.v0_lower = b.lower;
  res.residual = quantile(claim, 1.0 - alpha) - res.r0;
  return res;
}

}  // namespace cocval
