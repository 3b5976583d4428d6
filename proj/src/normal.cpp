#include "cocval/normal.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "cocval/errors.hpp"

namespace cocval::normal {
namespace {

constexpr std::array<double, 6> kA = {-3.969683028665376e+01, 2.209460984245205e+02,
                                      -2.759285104469687e+02, 1.383577518672690e+02,
                                      -3.066479806614716e+01, 2.506628277459239e+00};
constexpr std::array<double, 5> kB = {-5.447609879822406e+01, 1.615858368580409e+02,
                                      -1.556989798598866e+02, 6.680131188771972e+01,
                                      -1.328068155288572e+01};
constexpr std::array<double, 6> kC = {-7.784894002430293e-03, -3.223964580411365e-01,
                                      -2.400758277161838e+00, -2.549732539343734e+00,
                                      4.374664141464968e+00,  2.938163982698783e+00};
constexpr std::array<double, 4> kD = {7.784695709041462e-03, 3.224671290700398e-01,
                                      2.445134137142996e+00, 3.754408661907416e+00};
constexpr double kLowBreak = 0.02425;

// Lower-tail branch, valid for 0 < p < kLowBreak.
double acklam_tail(double p) {
  const double q = std::sqrt(-2.0 * std::log(p));
  return (((((kC[0] * q + kC[1]) * q + kC[2]) * q + kC[3]) * q + kC[4]) * q + kC[5]) /
         ((((kD[0] * q + kD[1]) * q + kD[2]) * q + kD[3]) * q + 1.0);
}

double acklam_central(double p) {
  const double q = p - 0.5;
  const double r = q * q;
  return (((((kA[0] * r + kA[1]) * r + kA[2]) * r + kA[3]) * r + kA[4]) * r + kA[5]) * q /
         (((((kB[0] * r + kB[1]) * r + kB[2]) * r + kB[3]) * r + kB[4]) * r + 1.0);
}

}  // namespace

double pdf(double x) { return kInvSqrt2Pi * std::exp(-0.5 * x * x); }

double cdf(double x) { return 0.5 * std::erfc(-x * kInvSqrt2); }

double survival(double x) { return 0.5 * std::erfc(x * kInvSqrt2); }

double quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw DomainError("normal quantile: probability must lie in (0,1), got " +
                      std::to_string(p));
  }
  // 1 - p is exact for p >= 1/2, so the upper tail is handled through it.
  const bool upper = p > 0.5;
  const double tail = upper ? 1.0 - p : p;

  double x = tail < kLowBreak ? acklam_tail(tail) : acklam_central(tail);

  // Halley step for cdf(x) = tail (lower-tail orientation, x <= 0).
  const double e = cdf(x) - tail;
  const double u = e / pdf(x);
  x -= u / (1.0 + 0.5 * x * u);

  return upper ? -x : x;
}

}  // namespace cocval::normal
