#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace cocval {

enum class RiskKind { var, es };

std::string_view to_string(RiskKind kind);
RiskKind parse_risk_kind(std::string_view name);

// VaR_alpha or ES_alpha applied to a net-worth variable Y (losses are -Y).
// alpha must lie in (0, 1/2) so that the normal (1-alpha)-quantile is positive.
class RiskMeasure {
 public:
  RiskMeasure(RiskKind kind, double alpha);

  static RiskMeasure value_at_risk(double alpha) { return {RiskKind::var, alpha}; }
  static RiskMeasure expected_shortfall(double alpha) { return {RiskKind::es, alpha}; }

  RiskKind kind() const { return kind_; }
  double alpha() const { return alpha_; }

  // The constant k with rho(N(m, s^2)) = -m + k s: Phi^-1(1-alpha) for VaR, psi(alpha) for ES.
  double gaussian_multiplier() const;

  friend bool operator==(const RiskMeasure&, const RiskMeasure&) = default;

 private:
  RiskKind kind_;
  double alpha_;
};

// Number of sample points in the alpha-tail, floor(alpha * n), with alpha * n
// snapped to the nearest integer when it is within rounding of one.
std::size_t tail_count(double alpha, std::size_t n);

// ceil((1-alpha) n)-th smallest loss -Y_i (left-continuous empirical quantile).
double var_empirical(std::span<const double> sample, double alpha);

// Discretized (1/alpha) int_0^alpha VaR_b db over the empirical distribution:
// with sorted losses l_1 <= ... <= l_n and k = floor(alpha n),
// (sum_{i>n-k} l_i + (alpha n - k) l_{n-k}) / (alpha n). Requires alpha n >= 1.
double es_empirical(std::span<const double> sample, double alpha);

double risk_empirical(const RiskMeasure& rm, std::span<const double> sample);

// In-place variants: `losses` holds -Y and is reordered (partially sorted).
double var_of_losses_inplace(std::vector<double>& losses, double alpha);
double es_of_losses_inplace(std::vector<double>& losses, double alpha);

double var_gaussian(double mean, double sd, double alpha);
double es_gaussian(double mean, double sd, double alpha);
double risk_gaussian(const RiskMeasure& rm, double mean, double sd);

// psi(alpha) = phi(Phi^-1(1-alpha)) / alpha, the ES counterpart of Phi^-1(1-alpha).
double psi(double alpha);

}  // namespace cocval
