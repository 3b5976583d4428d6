#pragma once

// Reference computations for the tests. Each one avoids the library code path
// it checks: plain bisection and Simpson's rule over textbook formulas.

#include <cmath>
#include <functional>
#include <numbers>

namespace oracle {

inline double phi(double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi); }
inline double Phi(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }
inline double Phi_bar(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

// Root of a monotone f on [lo, hi] with f(lo), f(hi) of opposite sign.
inline double bisect(const std::function<double(double)>& f, double lo, double hi,
                     int iterations = 200) {
  const bool rising = f(lo) < f(hi);
  for (int i = 0; i < iterations; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if ((f(mid) < 0.0) == rising) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Phi^-1(p). Bisects the lower tail for p <= 1/2 and the upper tail otherwise,
// so both tails keep full relative accuracy.
inline double normal_quantile(double p) {
  if (p <= 0.5) return bisect([p](double x) { return Phi(x) - p; }, -40.0, 0.0);
  const double q = 1.0 - p;
  return bisect([q](double x) { return Phi_bar(x) - q; }, 0.0, 40.0);
}

inline double simpson(const std::function<double(double)>& f, double a, double b, int n = 20000) {
  if (n % 2 != 0) ++n;
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 != 0 ? 4.0 : 2.0);
  return s * h / 3.0;
}

// E[Y^+] for Y ~ N(m, s^2).
inline double normal_positive_part(double m, double s) { return m * Phi(m / s) + s * phi(m / s); }

// rho(rZ - X) = gamma - r mu + k sqrt(r^2 sigma^2 + nu^2), root by bisection.
inline double gaussian_r0(double gamma, double nu, double mu, double sigma, double k) {
  auto g = [&](double r) { return gamma - r * mu + k * std::hypot(r * sigma, nu); };
  double hi = 1.0;
  while (g(hi) > 0.0) hi *= 2.0;
  return bisect(g, 0.0, hi);
}

}  // namespace oracle
