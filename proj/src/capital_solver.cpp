#include "cocval/capital_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "cocval/errors.hpp"
#include "cocval/normal.hpp"
#include "cocval/summation.hpp"

namespace cocval {

std::string_view to_string(SolveMethod m) {
  return m == SolveMethod::closed_form ? "closed_form" : "bisection";
}

double gaussian_capital_function(double gamma, double nu, double mu, double sigma, double k,
                                 double r) {
  return gamma - r * mu + k * std::sqrt(r * r * sigma * sigma + nu * nu);
}

namespace {

void check_gaussian(double gamma, double nu, double mu, double sigma) {
  if (!std::isfinite(gamma) || !std::isfinite(mu)) {
    throw DomainError("gaussian model: gamma and mu must be finite");
  }
  if (!(nu >= 0.0) || !(sigma >= 0.0) || !std::isfinite(nu) || !std::isfinite(sigma)) {
    throw DomainError("gaussian model: nu and sigma must be finite and >= 0");
  }
}

double discriminant_root(double gamma, double nu, double mu, double sigma, double k) {
  return std::sqrt(gamma * gamma * sigma * sigma + nu * nu * (mu * mu - sigma * sigma * k * k));
}

}  // namespace

double gaussian_r0(double gamma, double nu, double mu, double sigma, double k) {
  check_gaussian(gamma, nu, mu, sigma);
  if (sigma == 0.0) {
    if (!(mu > 0.0)) throw NoSolution("gaussian model: riskless return must be > 0");
    const double r = (gamma + nu * k) / mu;
    if (r < 0.0) throw NoSolution("gaussian model: no nonnegative capital level solves rho = 0");
    return r;
  }
  const double denom = mu * mu - sigma * sigma * k * k;
  if (!(mu > sigma * k)) {
    throw NoSolution("gaussian model: mean return " + std::to_string(mu) +
                     " does not exceed sigma * k = " + std::to_string(sigma * k));
  }
  const double r = (mu * gamma + k * discriminant_root(gamma, nu, mu, sigma, k)) / denom;
  if (r < 0.0) throw NoSolution("gaussian model: no nonnegative capital level solves rho = 0");
  return r;
}

double gaussian_r0_conjugate(double gamma, double nu, double mu, double sigma, double k) {
  check_gaussian(gamma, nu, mu, sigma);
  if (!(gamma > nu * k)) throw DomainError("conjugate form requires gamma > nu k");
  if (!(mu > sigma * k)) throw NoSolution("gaussian model: mu <= sigma k");
  return (gamma * gamma - nu * nu * k * k) /
         (mu * gamma - k * discriminant_root(gamma, nu, mu, sigma, k));
}

SolveReport solve_r0_gaussian(const RiskMeasure& rm, double gamma, double nu, double mu,
                              double sigma) {
  const double k = rm.gaussian_multiplier();
  SolveReport rep;
  rep.r0 = gaussian_r0(gamma, nu, mu, sigma, k);
  rep.method = SolveMethod::closed_form;
  rep.residual = gaussian_capital_function(gamma, nu, mu, sigma, k, rep.r0);
  return rep;
}

SolveReport solve_r0_gaussian_var(double gamma, double nu, double mu, double sigma, double alpha) {
  return solve_r0_gaussian(RiskMeasure::value_at_risk(alpha), gamma, nu, mu, sigma);
}

SolveReport solve_r0_gaussian_es(double gamma, double nu, double mu, double sigma, double alpha) {
  return solve_r0_gaussian(RiskMeasure::expected_shortfall(alpha), gamma, nu, mu, sigma);
}

SolveReport solve_r0_lognormal_var(double m_x, double s_x, double m_z, double s_z, double alpha) {
  const RiskMeasure rm = RiskMeasure::value_at_risk(alpha);
  if (!(s_x > 0.0) || !(s_z >= 0.0)) {
    throw DomainError("lognormal model: requires s_x > 0 and s_z >= 0");
  }
  const double spread = std::sqrt(s_z * s_z + s_x * s_x);
  SolveReport rep;
  rep.r0 = std::exp(m_x - m_z + normal::quantile(1.0 - rm.alpha()) * spread);
  rep.method = SolveMethod::closed_form;
  // log X1 - log Z1 ~ N(m_x - m_z, s_x^2 + s_z^2)
  rep.residual = normal::survival((std::log(rep.r0) - m_x + m_z) / spread) - rm.alpha();
  return rep;
}

namespace {

// Evaluates g(r) = rho(r Z1 - X1) over fixed samples with a reusable buffer.
class CapitalFunction {
 public:
  CapitalFunction(const MarketSamples& samples, double w, const RiskMeasure& rm)
      : s_(samples), w_(w), rm_(rm), buf_(samples.size()) {
    const std::size_t n = samples.size();
    acceptable_count_ = n - std::min(tail_count(rm.alpha(), n), n - 1);
  }

  double value(double r) {
    fill_losses(r);
    return rm_.kind() == RiskKind::var ? var_of_losses_inplace(buf_, rm_.alpha())
                                       : es_of_losses_inplace(buf_, rm_.alpha());
  }

  // g(r) <= 0. For VaR this is #{loss_i <= 0} >= ceil((1-alpha) n), a single
  // counting pass equivalent to evaluating the order statistic.
  bool acceptable(double r) {
    if (rm_.kind() == RiskKind::es) return value(r) <= 0.0;
    std::size_t count = 0;
    const std::size_t n = s_.size();
    for (std::size_t i = 0; i < n; ++i) {
      count += (s_.claim[i] - r * portfolio_return(w_, s_.asset[i]) <= 0.0) ? 1U : 0U;
    }
    return count >= acceptable_count_;
  }

 private:
  void fill_losses(double r) {
    for (std::size_t i = 0; i < buf_.size(); ++i) {
      buf_[i] = s_.claim[i] - r * portfolio_return(w_, s_.asset[i]);
    }
  }

  const MarketSamples& s_;
  double w_;
  RiskMeasure rm_;
  std::vector<double> buf_;
  std::size_t acceptable_count_ = 0;
};

bool riskless_weight(const MarketSamples& samples, double w, double& c) {
  if (w == 0.0) {
    c = 1.0;
    return true;
  }
  const auto [lo, hi] = std::minmax_element(samples.asset.begin(), samples.asset.end());
  if (*lo == *hi) {
    c = portfolio_return(w, *lo);
    return true;
  }
  return false;
}

}  // namespace

double empirical_capital_function(const MarketSamples& samples, double w, const RiskMeasure& rm,
                                  double r) {
  CapitalFunction g(samples, w, rm);
  return g.value(r);
}

SolveReport solve_r0_numeric(const MarketSamples& samples, double w, const RiskMeasure& rm,
                             double tol) {
  if (samples.size() == 0) throw DomainError("solve_r0_numeric: empty scenario set");
  if (!(w >= 0.0 && w <= 1.0)) throw DomainError("solve_r0_numeric: w must lie in [0,1]");
  if (!(tol > 0.0)) throw DomainError("solve_r0_numeric: tol must be > 0");

  CapitalFunction g(samples, w, rm);
  SolveReport rep;
  rep.method = SolveMethod::bisection;

  const double g0 = g.value(0.0);  // rho(-X1)
  if (g0 < 0.0) {
    throw NoSolution("rho(-X1) < 0: every nonnegative capital level is acceptable, no root");
  }
  if (g0 == 0.0) {
    rep.r0 = 0.0;
    rep.residual = 0.0;
    return rep;
  }

  double c = 1.0;
  if (riskless_weight(samples, w, c)) {
    if (!(c > 0.0)) throw NoSolution("riskless portfolio return is not positive");
    rep.r0 = g0 / c;
    rep.iterations = 1;
    rep.residual = g.value(rep.r0);
    rep.std_error = capital_std_error(samples, w, rm, rep.r0);
    return rep;
  }

  constexpr double kBracketCap = 1152921504606846976.0;  // 2^60
  double lo = 0.0;
  double hi = g0;
  while (!g.acceptable(hi)) {
    ++rep.iterations;
    lo = hi;
    hi *= 2.0;
    if (hi > kBracketCap) {
      throw NoSolution("bracket search exceeded 2^60 without rho(r Z1 - X1) <= 0");
    }
  }
  while (hi - lo > tol * std::max(1.0, hi)) {
    ++rep.iterations;
    const double mid = 0.5 * (lo + hi);
    if (g.acceptable(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  rep.r0 = 0.5 * (lo + hi);
  rep.residual = g.value(rep.r0);
  rep.std_error = capital_std_error(samples, w, rm, rep.r0);
  return rep;
}

SolveReport solve_r0_numeric(const MarketSpec& market, const RiskMeasure& rm,
                             const ScenarioSet& scen, double tol) {
  return solve_r0_numeric(draw_market(scen, market.claim, market.asset), market.w, rm, tol);
}

double capital_std_error(const MarketSamples& samples, double w, const RiskMeasure& rm,
                         double r0) {
  const std::size_t n = samples.size();
  const double alpha = rm.alpha();
  constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
  if (n < 4) return kNaN;

  std::vector<double> losses(n);
  for (std::size_t i = 0; i < n; ++i) {
    losses[i] = samples.claim[i] - r0 * portfolio_return(w, samples.asset[i]);
  }
  const std::size_t k = std::min(tail_count(alpha, n), n - 1);
  const std::size_t q_idx = n - k - 1;
  auto nth = [&](std::vector<double>& v, std::size_t idx) {
    std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(idx), v.end());
    return v[idx];
  };

  if (rm.kind() == RiskKind::var) {
    const auto m = static_cast<std::size_t>(std::max(1.0, std::round(std::sqrt(double(n)))));
    const std::size_t lo_idx = q_idx >= m ? q_idx - m : 0;
    const std::size_t hi_idx = std::min(n - 1, q_idx + m);
    std::vector<double> work = losses;
    const double l_hi = nth(work, hi_idx);
    const double l_lo = nth(work, lo_idx);
    if (!(l_hi > l_lo)) return kNaN;
    const double density =
        static_cast<double>(hi_idx - lo_idx) / static_cast<double>(n) / (l_hi - l_lo);
    double z_sum = 0.0;
    std::size_t z_count = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (losses[i] >= l_lo && losses[i] <= l_hi) {
        z_sum += portfolio_return(w, samples.asset[i]);
        ++z_count;
      }
    }
    const double slope = density * z_sum / static_cast<double>(z_count);
    if (!(slope > 0.0)) return kNaN;
    return std::sqrt(alpha * (1.0 - alpha) / static_cast<double>(n)) / slope;
  }

  std::vector<double> work = losses;
  const double var = nth(work, q_idx);
  const double es = es_of_losses_inplace(work, alpha);
  double tail_n = 0.0, z_sum = 0.0, l_sum = 0.0, l_sq = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (losses[i] >= var) {
      tail_n += 1.0;
      z_sum += portfolio_return(w, samples.asset[i]);
      l_sum += losses[i];
      l_sq += losses[i] * losses[i];
    }
  }
  if (tail_n < 2.0) return kNaN;
  const double tail_mean = l_sum / tail_n;
  const double tail_var = std::max(0.0, (l_sq - tail_n * tail_mean * tail_mean) / (tail_n - 1.0));
  const double es_se = std::sqrt((tail_var + (1.0 - alpha) * (es - var) * (es - var)) /
                                 (static_cast<double>(n) * alpha));
  const double slope = z_sum / tail_n;
  if (!(slope > 0.0)) return kNaN;
  return es_se / slope;
}

}  // namespace cocval
