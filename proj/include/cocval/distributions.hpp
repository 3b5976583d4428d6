#pragma once

#include <string>
#include <string_view>
#include <variant>

namespace cocval {

// N(mean, sd^2). sd == 0 is accepted and behaves as a point mass at `mean`.
struct Normal {
  double mean = 0.0;
  double sd = 1.0;
};

// LN(mu_log, sd_log^2): log X ~ N(mu_log, sd_log^2).
struct Lognormal {
  double mu_log = 0.0;
  double sd_log = 1.0;
};

// Pareto type I: P(X > x) = (x / x_m)^(-beta) for x >= x_m.
struct ParetoTypeI {
  double x_m = 1.0;
  double beta = 2.0;
};

// Point mass; a risk-less bond is Degenerate{1}.
struct Degenerate {
  double value = 0.0;
};

enum class DistributionKind { normal, lognormal, pareto, degenerate };

std::string_view to_string(DistributionKind kind);

// Tagged scalar distribution. Parameters are validated on construction and the
// value is immutable afterwards.
class Distribution {
 public:
  using Variant = std::variant<Normal, Lognormal, ParetoTypeI, Degenerate>;

  Distribution() : Distribution(Degenerate{0.0}) {}
  Distribution(Normal d);       // NOLINT(google-explicit-constructor)
  Distribution(Lognormal d);    // NOLINT(google-explicit-constructor)
  Distribution(ParetoTypeI d);  // NOLINT(google-explicit-constructor)
  Distribution(Degenerate d);   // NOLINT(google-explicit-constructor)

  const Variant& variant() const { return v_; }
  DistributionKind kind() const;

  template <class T>
  const T* get_if() const {
    return std::get_if<T>(&v_);
  }
  template <class T>
  bool is() const {
    return std::holds_alternative<T>(v_);
  }

  friend bool operator==(const Distribution& a, const Distribution& b);

 private:
  Variant v_;
};

double cdf(const Distribution& d, double x);
double survival(const Distribution& d, double x);
double pdf(const Distribution& d, double x);
// Left-continuous generalized inverse of the cdf; p must lie in (0, 1).
double quantile(const Distribution& d, double p);
// Inverse-transform draw from an externally supplied uniform u in (0, 1).
double sample(const Distribution& d, double u);

double mean(const Distribution& d);
// +infinity when the second moment does not exist (Pareto beta <= 2).
double variance(const Distribution& d);
double stddev(const Distribution& d);

// E[(X - k)^+], in closed form for every kind.
double stop_loss(const Distribution& d, double k);

// Lower end of the support (-infinity for a non-degenerate Normal).
double support_min(const Distribution& d);
bool is_nonnegative(const Distribution& d);

// Distribution of a * X for a > 0.
Distribution scaled(const Distribution& d, double a);

Lognormal lognormal_from_moments(double mean, double sd);
ParetoTypeI pareto_from_moments(double mean, double sd);
ParetoTypeI pareto_from_mean_beta(double mean, double beta);

std::string describe(const Distribution& d);

}  // namespace cocval
