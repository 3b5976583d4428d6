#include "cocval/analysis.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <ostream>

#include "cocval/errors.hpp"

namespace cocval {

std::vector<double> make_grid(double step) {
  if (!(step > 0.0 && step <= 1.0)) throw DomainError("grid step must lie in (0, 1]");
  const auto count = static_cast<std::size_t>(std::llround(std::ceil(1.0 / step - 1e-9)));
  std::vector<double> grid;
  grid.reserve(count + 1);
  for (std::size_t i = 0; i < count; ++i) grid.push_back(static_cast<double>(i) * step);
  grid.push_back(1.0);
  return grid;
}

namespace {

void check_grid(std::span<const double> grid) {
  if (grid.empty() || grid.front() != 0.0) throw DomainError("sweep grid must start at w = 0");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] >= 0.0 && grid[i] <= 1.0)) throw DomainError("sweep grid must lie in [0,1]");
    if (i > 0 && !(grid[i] > grid[i - 1])) throw DomainError("sweep grid must be increasing");
  }
}

}  // namespace

void summarize(SweepResult& result) {
  std::size_t prefix = 0;
  while (prefix < result.rows.size() && result.rows[prefix].feasible) ++prefix;
  result.w_hat_numeric.reset();
  if (prefix == 0) {
    result.w_star = std::numeric_limits<double>::quiet_NaN();
    return;
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < prefix; ++i) {
    if (result.rows[i].value.r0 < result.rows[best].value.r0) best = i;
  }
  result.w_star = result.rows[best].w;

  const double base = result.rows[0].value.r0;
  for (std::size_t i = 1; i < prefix; ++i) {
    const double d = result.rows[i].value.r0 - base;
    if (d >= 0.0) {
      const double d_prev = result.rows[i - 1].value.r0 - base;
      const double w0 = result.rows[i - 1].w;
      const double w1 = result.rows[i].w;
      result.w_hat_numeric = d == d_prev ? w1 : w0 + (w1 - w0) * (-d_prev) / (d - d_prev);
      break;
    }
  }
}

SweepResult sweep(const MarketTemplate& market, const RiskMeasure& rm, std::span<const double> grid,
                  const ScenarioSet& scen, double tol) {
  check_grid(grid);
  const MarketSamples samples = draw_market(scen, market.claim, market.asset);
  SweepResult out;
  out.grid.assign(grid.begin(), grid.end());
  out.rows.reserve(grid.size());
  for (double w : grid) {
    SweepRow row;
    row.w = w;
    try {
      row.value = value_monte_carlo(samples, market.at(w), rm, tol);
    } catch (const NoSolution& e) {
      row.feasible = false;
      row.note = e.what();
    }
    out.rows.push_back(std::move(row));
  }
  summarize(out);
  return out;
}

SweepResult sweep_gaussian_closed_form(const MarketTemplate& market, const RiskMeasure& rm,
                                       std::span<const double> grid) {
  check_grid(grid);
  const auto* claim = market.claim.get_if<Normal>();
  if (claim == nullptr) throw Unsupported("closed-form sweep needs a Normal claim");
  double mu = 0.0, sigma = 0.0;
  if (const auto* a = market.asset.get_if<Normal>()) {
    mu = a->mean;
    sigma = a->sd;
  } else if (const auto* g = market.asset.get_if<Degenerate>()) {
    mu = g->value;
  } else {
    throw Unsupported("closed-form sweep needs a Normal or degenerate asset");
  }

  SweepResult out;
  out.grid.assign(grid.begin(), grid.end());
  for (double w : grid) {
    SweepRow row;
    row.w = w;
    try {
      row.value = value_gaussian(rm, claim->mean, claim->sd, portfolio_return(w, mu), w * sigma,
                                 market.eta);
    } catch (const NoSolution& e) {
      row.feasible = false;
      row.note = e.what();
    }
    out.rows.push_back(std::move(row));
  }
  summarize(out);
  try {
    out.w_hat_closed = what_gaussian(rm, claim->mean, claim->sd, mu, sigma);
  } catch (const DomainError&) {
    out.w_hat_closed.reset();
  }
  return out;
}

std::optional<ValuationResult> value_closed_form(const MarketSpec& market, const RiskMeasure& rm) {
  const double w = market.w;
  if (const auto* x = market.claim.get_if<Normal>()) {
    if (market.riskless()) {
      return value_gaussian(rm, x->mean, x->sd, market.riskless_return(), 0.0, market.eta);
    }
    if (const auto* s = market.asset.get_if<Normal>()) {
      return value_gaussian(rm, x->mean, x->sd, portfolio_return(w, s->mean), w * s->sd,
                            market.eta);
    }
    return std::nullopt;
  }
  if (rm.kind() != RiskKind::var) return std::nullopt;
  if (const auto* x = market.claim.get_if<Lognormal>()) {
    if (market.riskless()) {
      const double c = market.riskless_return();
      if (!(c > 0.0)) return std::nullopt;
      return value_lognormal_var(x->mu_log, x->sd_log, std::log(c), 0.0, rm.alpha(), market.eta);
    }
    if (const auto* s = market.asset.get_if<Lognormal>(); s != nullptr && w == 1.0) {
      return value_lognormal_var(x->mu_log, x->sd_log, s->mu_log, s->sd_log, rm.alpha(),
                                 market.eta);
    }
    return std::nullopt;
  }
  if (const auto* x = market.claim.get_if<ParetoTypeI>()) {
    if (market.riskless() && market.riskless_return() == 1.0) {
      return pareto_riskless_valuation(x->beta, mean(market.claim), rm.alpha(), market.eta);
    }
  }
  return std::nullopt;
}

double what_gaussian(const RiskMeasure& rm, double gamma, double nu, double mu, double sigma) {
  const double k = rm.gaussian_multiplier();
  if (!(nu > 0.0 && sigma > 0.0)) throw DomainError("w_hat: needs nu > 0 and sigma > 0");
  if (!(gamma > nu * k)) throw DomainError("w_hat: needs gamma > nu k");
  if (!(mu > std::max(1.0, sigma * k))) throw DomainError("w_hat: needs mu > max(1, sigma k)");
  if (mu >= 1.0 + sigma * k) return 1.0;
  const double w = 2.0 * (mu - 1.0) * nu * k /
                   ((1.0 + sigma * k - mu) * (mu - 1.0 + sigma * k) * (gamma + nu * k));
  return std::min(w, 1.0);
}

double what_gaussian_var(double gamma, double nu, double mu, double sigma, double alpha) {
  return what_gaussian(RiskMeasure::value_at_risk(alpha), gamma, nu, mu, sigma);
}

double what_gaussian_es(double gamma, double nu, double mu, double sigma, double alpha) {
  return what_gaussian(RiskMeasure::expected_shortfall(alpha), gamma, nu, mu, sigma);
}

double negative_loading_threshold(double r0_w, double mean_claim, double mean_asset, double eta) {
  if (!(r0_w > 0.0)) throw DomainError("negative_loading_threshold: r0 must be > 0");
  if (!(mean_asset > 1.0)) return std::numeric_limits<double>::infinity();
  return eta / (mean_asset - 1.0) * (r0_w - mean_claim) / r0_w;
}

MutualBenefit check_mutual_benefit(double r0_w, double mu_w, double r0_0) {
  MutualBenefit mb;
  mb.condition_c = r0_w * mu_w >= r0_0;
  mb.condition_v = mb.condition_c && r0_0 >= r0_w;
  return mb;
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  // Shortest representation first; fall back to 15 significant digits.
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  std::string shortest(buf, res.ptr);
  std::size_t digits = 0;
  for (char c : shortest) {
    if (c == 'e' || c == 'E') break;
    if (c >= '0' && c <= '9') ++digits;
  }
  if (digits <= 15) return shortest;
  res = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, 15);
  return {buf, res.ptr};
}

void write_sweep_csv(std::ostream& os, const SweepResult& r) {
  os << "w,r0,c0,v0,v0_upper,v0_lower,llo,r0_se,c0_se,v0_se\n";
  const std::string nan = "nan";
  for (const auto& row : r.rows) {
    os << format_number(row.w) << ',';
    if (!row.feasible) {
      for (int i = 0; i < 9; ++i) os << nan << (i < 8 ? "," : "");
      os << '\n';
      continue;
    }
    const auto& v = row.value;
    os << format_number(v.r0) << ',' << format_number(v.c0) << ',' << format_number(v.v0) << ','
       << format_number(v.v0_upper) << ','
       << (v.v0_lower ? format_number(*v.v0_lower) : std::string()) << ','
       << format_number(v.llo) << ',' << format_number(v.r0_se) << ','
       << format_number(v.c0_se) << ',' << format_number(v.v0_se) << '\n';
  }
  auto opt = [](const std::optional<double>& x) { return x ? format_number(*x) : std::string(); };
  os << "\nw_star,w_hat_numeric,w_hat_closed\n"
     << format_number(r.w_star) << ',' << opt(r.w_hat_numeric) << ',' << opt(r.w_hat_closed)
     << '\n';
}

}  // namespace cocval
