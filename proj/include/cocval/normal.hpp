#pragma once

namespace cocval::normal {

inline constexpr double kInvSqrt2Pi = 0.398942280401432677939946059934;
inline constexpr double kInvSqrt2 = 0.707106781186547524400844362105;

double pdf(double x);
double cdf(double x);
// Upper tail 1 - cdf(x), computed without cancellation for large x.
double survival(double x);

// Inverse of cdf on (0, 1).
//
// Acklam's rational approximation (relative error ~1.2e-9) followed by one
// Halley step on the exact cdf, giving |error| < 1e-13 on [1e-8, 1 - 1e-8].
// The correction for p > 1/2 works with the upper tail so that quantiles
// close to 1 do not lose digits to cancellation.
double quantile(double p);

}  // namespace cocval::normal
