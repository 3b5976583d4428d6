#include <cmath>
#include <vector>

#include "cocval/capital_solver.hpp"
#include "cocval/errors.hpp"
#include "cocval/montecarlo.hpp"
#include "cocval/valuation.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace cocval;

namespace {

// E[(r Z - X) ^ 0] pieces for Gaussian Y = r Z - X ~ N(r mu - gamma, r^2 sigma^2 + nu^2).
struct GaussianOracle {
  double c0, v0, llo;
};

GaussianOracle gaussian_oracle(double r0, double gamma, double nu, double mu, double sigma,
                               double eta) {
  const double m = r0 * mu - gamma;
  const double s = std::hypot(r0 * sigma, nu);
  const double pos = oracle::normal_positive_part(m, s);
  return {pos / (1 + eta), r0 - pos / (1 + eta), (pos - m) / (1 + eta)};
}

// int_0^inf P(a > t) P(x > t) dt for lognormal a, x, in log space.
double lognormal_capped_oracle(double m_a, double s_a, double m_x, double s_x) {
  auto f = [&](double u) {
    const double t = std::exp(u);
    return oracle::Phi_bar((u - m_a) / s_a) * oracle::Phi_bar((u - m_x) / s_x) * t;
  };
  // Below u = -40 both survival functions are 1 and the integrand is e^u.
  const double lo = -40.0;
  return std::exp(lo) +
         oracle::simpson(f, lo, std::max(m_a, m_x) + 12.0 * std::max(s_a, s_x), 400000);
}

}  // namespace

TEST_CASE("Gaussian payoff constants") {
  CHECK(gaussian_delta(0.005) == doctest::Approx(6.136262628e-4).epsilon(1e-8));
  for (double a : {0.001, 0.005, 0.01, 0.1, 0.3}) {
    const double q = oracle::normal_quantile(1 - a);
    CHECK(gaussian_delta(a) > 0.0);
    CHECK(gaussian_delta(a) == doctest::Approx(oracle::phi(q) / q - a).epsilon(1e-10));
  }
  CHECK(gaussian_payoff_factor(RiskMeasure::expected_shortfall(0.01)) ==
        doctest::Approx(1.0004454476089306).epsilon(1e-12));
}

TEST_CASE("Gaussian closed forms match the positive-part oracle") {
  const double eta = 0.06;
  for (const RiskMeasure& rm :
       {RiskMeasure::value_at_risk(0.005), RiskMeasure::expected_shortfall(0.01),
        RiskMeasure::value_at_risk(0.05)}) {
    for (double w : {0.0, 0.1, 0.5, 1.0}) {
      const double mu = 1.05 * w + 1 - w;
      const double sigma = 0.2 * w;
      const ValuationResult v = value_gaussian(rm, 1.0, 0.3, mu, sigma, eta);
      const GaussianOracle o = gaussian_oracle(v.r0, 1.0, 0.3, mu, sigma, eta);
      CAPTURE(w);
      CHECK(v.c0 == doctest::Approx(o.c0).epsilon(1e-12));
      CHECK(v.v0 == doctest::Approx(o.v0).epsilon(1e-12));
      CHECK(v.llo == doctest::Approx(o.llo).epsilon(1e-9));
      CHECK(std::abs(v.v0 + v.c0 - v.r0) <= 1e-14 * v.r0);
      CHECK(v.llo >= 0.0);
      CHECK(v.v0 <= v.v0_upper);
      if (rm.kind() == RiskKind::var) {
        REQUIRE(v.v0_lower.has_value());
        CHECK(*v.v0_lower <= v.v0);
      } else {
        CHECK_FALSE(v.v0_lower.has_value());
      }
      CHECK(v.v0_upper - v.v0 == doctest::Approx(v.llo).epsilon(1e-9));
    }
  }
}

TEST_CASE("Gaussian base case reference values") {
  const ValuationResult v = value_gaussian_var(1.0, 0.3, 1.0, 0.0, 0.005, 0.06);
  CHECK(v.r0 == doctest::Approx(1.7727487910646702).epsilon(1e-12));
  CHECK(v.c0 == doctest::Approx(0.7294556320919076).epsilon(1e-12));
  CHECK(v.v0 == doctest::Approx(1.0432931589727628).epsilon(1e-12));
  CHECK(v.llo == doctest::Approx(4.4734e-4).epsilon(1e-4));
}

TEST_CASE("Gaussian V0 is increasing in gamma when E[Z] <= 1 + eta") {
  for (double mu : {0.98, 1.0, 1.05}) {
    double prev = value_gaussian_var(0.8, 0.3, mu, 0.1, 0.005, 0.06).v0;
    for (double g = 0.85; g <= 2.0; g += 0.05) {
      const double cur = value_gaussian_var(g, 0.3, mu, 0.1, 0.005, 0.06).v0;
      CHECK(cur >= prev);
      prev = cur;
    }
  }
}

TEST_CASE("V0 bounds") {
  const RiskMeasure var = RiskMeasure::value_at_risk(0.005);
  // Z1 = 1: upper = (eta r0 + E[X]) / (1 + eta).
  const V0Bounds b = v0_bounds(2.0, MomentSummary{1.0, 0.0, 1.0, 0.09}, var, 0.06);
  CHECK(b.upper == doctest::Approx((0.06 * 2.0 + 1.0) / 1.06).epsilon(1e-15));
  REQUIRE(b.lower.has_value());
  CHECK(*b.lower == doctest::Approx(2.0 - std::sqrt(0.995) / 1.06 * std::sqrt(0.09 + 1.0)));
  const V0Bounds inf =
      v0_bounds(2.0, MomentSummary{1.0, 0.0, 1.0, std::numeric_limits<double>::infinity()}, var,
                0.06);
  CHECK_FALSE(inf.lower.has_value());
  const V0Bounds es =
      v0_bounds(2.0, MomentSummary{1.0, 0.0, 1.0, 0.09}, RiskMeasure::expected_shortfall(0.01),
                0.06);
  CHECK_FALSE(es.lower.has_value());
}

TEST_CASE("Pareto claim with the bond") {
  const ValuationResult two = pareto_riskless_valuation(2.0, 1.0, 0.005, 0.06);
  CHECK(two.r0 == doctest::Approx(7.0711).epsilon(1e-4));
  CHECK(two.llo == doctest::Approx(0.0334).epsilon(0.0005 / 0.0334));
  CHECK(two.v0 == doctest::Approx(1.310).epsilon(0.005 / 1.31));
  CHECK(two.v0_upper == doctest::Approx(1.3437).epsilon(1e-4));
  CHECK_FALSE(two.v0_lower.has_value());

  for (double beta : {1.1, 1.5, 2.0, 3.0}) {
    const double eta = 0.06, alpha = 0.005;
    const double x_m = (beta - 1) / beta;
    const double r0 = x_m * std::pow(alpha, -1.0 / beta);
    // E[X ^ r0] = x_m + int_{x_m}^{r0} (t / x_m)^-beta dt.
    const double capped =
        x_m + oracle::simpson([&](double t) { return std::pow(t / x_m, -beta); }, x_m, r0, 200000);
    const ValuationResult v = pareto_riskless_valuation(beta, 1.0, alpha, eta);
    CAPTURE(beta);
    CHECK(v.r0 == doctest::Approx(r0).epsilon(1e-14));
    CHECK(v.v0 == doctest::Approx((capped + eta * r0) / (1 + eta)).epsilon(1e-10));
    CHECK(v.llo == doctest::Approx((1.0 - capped) / (1 + eta)).epsilon(1e-8));
    CHECK(v.v0 + v.c0 == doctest::Approx(v.r0).epsilon(1e-15));
    CHECK(v.v0_upper - v.v0 == doctest::Approx(v.llo).epsilon(1e-10));
    CHECK(v.v0_lower.has_value() == (beta > 2.0));
    CHECK(std::abs(v.residual) < 1e-12 * r0);
  }
  // Homogeneous in the mean claim.
  const ValuationResult twice = pareto_riskless_valuation(2.0, 2.0, 0.005, 0.06);
  CHECK(twice.r0 == doctest::Approx(2 * two.r0).epsilon(1e-14));
  CHECK(twice.v0 == doctest::Approx(2 * two.v0).epsilon(1e-14));
  CHECK(twice.llo == doctest::Approx(2 * two.llo).epsilon(1e-14));
}

TEST_CASE("capped expectation quadrature against a log-space Simpson oracle") {
  for (double s_a : {0.1, 0.3}) {
    for (double s_x : {0.2, 0.6}) {
      const double m_a = 0.6, m_x = -0.1;
      const double q = capped_expectation_quadrature(Lognormal{m_a, s_a}, Lognormal{m_x, s_x});
      CHECK(q == doctest::Approx(lognormal_capped_oracle(m_a, s_a, m_x, s_x)).epsilon(1e-8));
    }
  }
  // Degenerate asset: E[c ^ X] = c - E[(c - X)^+] = E[X] - E[(X - c)^+].
  const Distribution x = ParetoTypeI{0.5, 2.0};
  CHECK(capped_expectation_quadrature(Degenerate{3.0}, x) ==
        doctest::Approx(1.0 - stop_loss(x, 3.0)).epsilon(1e-9));
  CHECK_THROWS_AS(capped_expectation_quadrature(Normal{1.0, 0.2}, x), Unsupported);
}

TEST_CASE("mixture capped expectation agrees with Monte Carlo") {
  const ScenarioSet scen = generate(1'000'000, 77);
  const MarketSpec market(lognormal_from_moments(1.0, 0.4), lognormal_from_moments(1.05, 0.3),
                          0.4, 0.06);
  const double r0 = 2.1;
  const MarketSamples s = draw_market(scen, market.claim, market.asset);
  std::vector<double> capped(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    capped[i] = std::min(r0 * portfolio_return(market.w, s.asset[i]), s.claim[i]);
  }
  const McEstimate mc = estimate_mean(capped);
  CHECK(std::abs(capped_expectation_quadrature(r0, market) - mc.value) < 4 * mc.std_error);
  CHECK_THROWS_AS(capped_expectation_quadrature(r0, MarketSpec(Normal{1, 0.3}, Normal{1, 0.1},
                                                               0.5, 0.06)),
                  Unsupported);
}

TEST_CASE("lognormal valuation matches the oracle and the generic quadrature") {
  const Lognormal x = lognormal_from_moments(1.0, 0.3);
  for (double sd_s : {0.1, 0.2, 0.3}) {
    const Lognormal s = lognormal_from_moments(1.05, sd_s);
    const double eta = 0.06;
    const ValuationResult v = value_lognormal_var(x.mu_log, x.sd_log, s.mu_log, s.sd_log, 0.005,
                                                  eta);
    const double capped =
        lognormal_capped_oracle(s.mu_log + std::log(v.r0), s.sd_log, x.mu_log, x.sd_log);
    CAPTURE(sd_s);
    CHECK(v.v0 == doctest::Approx((v.r0 * (eta + 1.0 - 1.05) + capped) / (1 + eta)).epsilon(1e-9));
    const MarketSpec market(x, s, 1.0, eta);
    CHECK(capped_expectation_quadrature(v.r0, market) == doctest::Approx(capped).epsilon(1e-8));
    CHECK(v.v0 + v.c0 == doctest::Approx(v.r0).epsilon(1e-15));
    CHECK(v.llo >= 0.0);
    CHECK(v.llo <= 1.0 / (1 + eta));
    REQUIRE(v.v0_lower.has_value());
    CHECK(*v.v0_lower <= v.v0);
    CHECK(v.v0 <= v.v0_upper);
  }
  // s_z = 0 reduces to a bond.
  const ValuationResult bond = value_lognormal_var(x.mu_log, x.sd_log, 0.0, 0.0, 0.005, 0.06);
  CHECK(bond.r0 == doctest::Approx(quantile(x, 0.995)).epsilon(1e-12));
}

TEST_CASE("Monte Carlo valuation: identities, signs and the Gaussian oracle") {
  const ScenarioSet scen = generate(1'000'000, 3);
  const double eta = 0.06;
  for (double w : {0.0, 0.2, 0.7}) {
    const MarketSpec market(Normal{1.0, 0.3}, Normal{1.05, 0.2}, w, eta);
    const double mu = market.mean_return(), sigma = 0.2 * w;
    const double r0 = gaussian_r0(1.0, 0.3, mu, sigma, oracle::normal_quantile(0.995));
    const GaussianOracle o = gaussian_oracle(r0, 1.0, 0.3, mu, sigma, eta);
    const McEstimate c0 = value_c0_mc(r0, market, scen);
    const McEstimate v0 = value_v0_mc(r0, market, scen);
    const McEstimate llo = llo_mc(r0, market, scen);
    CAPTURE(w);
    CHECK(std::abs(c0.value - o.c0) < 4 * c0.std_error);
    CHECK(std::abs(v0.value - o.v0) < 4 * v0.std_error);
    CHECK(std::abs(llo.value - o.llo) < 4 * llo.std_error + 1e-12);
    CHECK(v0.value + c0.value == doctest::Approx(r0).epsilon(1e-12));
    CHECK(llo.value >= 0.0);
  }
}

TEST_CASE("value_monte_carlo fills every field") {
  const ScenarioSet scen = generate(200'000, 8);
  const MarketSpec market(lognormal_from_moments(1.0, 0.3), lognormal_from_moments(1.05, 0.2),
                          0.5, 0.06);
  const ValuationResult v = value_monte_carlo(market, RiskMeasure::value_at_risk(0.005), scen);
  CHECK(v.r0_method == ValueMethod::bisection);
  CHECK(v.v0_method == ValueMethod::monte_carlo);
  CHECK(v.r0_se > 0.0);
  CHECK(v.c0_se > 0.0);
  CHECK(v.v0_se > 0.0);
  CHECK(v.llo_se >= 0.0);
  CHECK(v.v0 + v.c0 == doctest::Approx(v.r0).epsilon(1e-12));
  CHECK(v.v0 <= v.v0_upper + 4 * v.v0_se);
  REQUIRE(v.v0_lower.has_value());
  CHECK(v.v0 >= *v.v0_lower - 4 * v.v0_se);
  CHECK(v.llo <= 1.0 / 1.06);
}
