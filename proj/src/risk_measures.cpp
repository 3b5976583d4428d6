#include "cocval/risk_measures.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cocval/errors.hpp"
#include "cocval/normal.hpp"
#include "cocval/summation.hpp"

namespace cocval {

std::string_view to_string(RiskKind kind) { return kind == RiskKind::var ? "var" : "es"; }

RiskKind parse_risk_kind(std::string_view name) {
  if (name == "var" || name == "VaR") return RiskKind::var;
  if (name == "es" || name == "ES") return RiskKind::es;
  throw DomainError("unknown risk measure '" + std::string(name) + "' (expected var or es)");
}

RiskMeasure::RiskMeasure(RiskKind kind, double alpha) : kind_(kind), alpha_(alpha) {
  if (!(alpha > 0.0 && alpha < 0.5)) {
    throw DomainError("risk measure: alpha must lie in (0, 1/2), got " + std::to_string(alpha));
  }
}

double RiskMeasure::gaussian_multiplier() const {
  return kind_ == RiskKind::var ? normal::quantile(1.0 - alpha_) : psi(alpha_);
}

std::size_t tail_count(double alpha, std::size_t n) {
  const double an = alpha * static_cast<double>(n);
  const double nearest = std::round(an);
  if (std::abs(an - nearest) <= 1e-9 * std::max(1.0, an)) return static_cast<std::size_t>(nearest);
  return static_cast<std::size_t>(std::floor(an));
}

namespace {

std::vector<double> negated(std::span<const double> sample) {
  std::vector<double> losses(sample.size());
  std::transform(sample.begin(), sample.end(), losses.begin(), [](double y) { return -y; });
  return losses;
}

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw DomainError("alpha must lie in (0,1), got " + std::to_string(alpha));
  }
}

}  // namespace

double var_of_losses_inplace(std::vector<double>& losses, double alpha) {
  if (losses.empty()) throw DomainError("var_empirical: empty sample");
  check_alpha(alpha);
  const std::size_t n = losses.size();
  const std::size_t k = tail_count(alpha, n);
  // ceil((1-alpha) n) = n - k, 1-based; clamp for alpha n >= n - 1 edge cases.
  const std::size_t idx = k >= n ? 0 : n - k - 1;
  std::nth_element(losses.begin(), losses.begin() + static_cast<std::ptrdiff_t>(idx),
                   losses.end());
  return losses[idx];
}

double es_of_losses_inplace(std::vector<double>& losses, double alpha) {
  if (losses.empty()) throw DomainError("es_empirical: empty sample");
  check_alpha(alpha);
  const std::size_t n = losses.size();
  const double an = alpha * static_cast<double>(n);
  const std::size_t k = tail_count(alpha, n);
  if (k < 1) throw DomainError("es_empirical: alpha * n < 1, tail not resolved by the sample");
  const double frac = std::max(0.0, an - static_cast<double>(k));
  const std::size_t idx = n - k - 1;  // 0-based position of l_{n-k}
  std::nth_element(losses.begin(), losses.begin() + static_cast<std::ptrdiff_t>(idx),
                   losses.end());
  const double pivot = losses[idx];
  const double tail =
      pairwise_sum(std::span<const double>(losses).subspan(idx + 1, k));
  return (tail + frac * pivot) / an;
}

double var_empirical(std::span<const double> sample, double alpha) {
  auto losses = negated(sample);
  return var_of_losses_inplace(losses, alpha);
}

double es_empirical(std::span<const double> sample, double alpha) {
  auto losses = negated(sample);
  return es_of_losses_inplace(losses, alpha);
}

double risk_empirical(const RiskMeasure& rm, std::span<const double> sample) {
  return rm.kind() == RiskKind::var ? var_empirical(sample, rm.alpha())
                                    : es_empirical(sample, rm.alpha());
}

double var_gaussian(double mean, double sd, double alpha) {
  if (sd < 0.0) throw DomainError("var_gaussian: sd must be >= 0");
  if (sd == 0.0) return -mean;
  return -mean + sd * normal::quantile(1.0 - alpha);
}

double es_gaussian(double mean, double sd, double alpha) {
  if (sd < 0.0) throw DomainError("es_gaussian: sd must be >= 0");
  if (sd == 0.0) return -mean;
  return -mean + sd * psi(alpha);
}

double risk_gaussian(const RiskMeasure& rm, double mean, double sd) {
  return rm.kind() == RiskKind::var ? var_gaussian(mean, sd, rm.alpha())
                                    : es_gaussian(mean, sd, rm.alpha());
}

double psi(double alpha) {
  check_alpha(alpha);
  return normal::pdf(normal::quantile(1.0 - alpha)) / alpha;
}

}  // namespace cocval
