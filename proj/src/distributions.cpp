#include "cocval/distributions.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "cocval/errors.hpp"
#include "cocval/normal.hpp"

namespace cocval {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require(bool ok, const char* what) {
  if (!ok) throw DomainError(what);
}

void check_probability(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw DomainError("quantile: probability must lie in (0,1), got " + std::to_string(p));
  }
}

}  // namespace

std::string_view to_string(DistributionKind kind) {
  switch (kind) {
    case DistributionKind::normal: return "normal";
    case DistributionKind::lognormal: return "lognormal";
    case DistributionKind::pareto: return "pareto";
    case DistributionKind::degenerate: return "degenerate";
  }
  return "unknown";
}

Distribution::Distribution(Normal d) : v_(d) {
  require(std::isfinite(d.mean), "normal: mean must be finite");
  require(std::isfinite(d.sd) && d.sd >= 0.0, "normal: sd must be finite and >= 0");
}

Distribution::Distribution(Lognormal d) : v_(d) {
  require(std::isfinite(d.mu_log), "lognormal: mu_log must be finite");
  require(std::isfinite(d.sd_log) && d.sd_log > 0.0, "lognormal: sd_log must be > 0");
  require(std::isfinite(d.mu_log + 0.5 * d.sd_log * d.sd_log) &&
              std::isfinite(std::exp(d.mu_log + 0.5 * d.sd_log * d.sd_log)),
          "lognormal: mean must be finite");
}

Distribution::Distribution(ParetoTypeI d) : v_(d) {
  require(std::isfinite(d.x_m) && d.x_m > 0.0, "pareto: x_m must be > 0");
  require(std::isfinite(d.beta) && d.beta > 1.0, "pareto: beta must be > 1 (finite mean)");
}

Distribution::Distribution(Degenerate d) : v_(d) {
  require(std::isfinite(d.value), "degenerate: value must be finite");
}

DistributionKind Distribution::kind() const {
  return static_cast<DistributionKind>(v_.index());
}

bool operator==(const Distribution& a, const Distribution& b) {
  return std::visit(
      overloaded{
          [](const Normal& x, const Normal& y) { return x.mean == y.mean && x.sd == y.sd; },
          [](const Lognormal& x, const Lognormal& y) {
            return x.mu_log == y.mu_log && x.sd_log == y.sd_log;
          },
          [](const ParetoTypeI& x, const ParetoTypeI& y) {
            return x.x_m == y.x_m && x.beta == y.beta;
          },
          [](const Degenerate& x, const Degenerate& y) { return x.value == y.value; },
          [](const auto&, const auto&) { return false; }},
      a.variant(), b.variant());
}

double cdf(const Distribution& d, double x) {
  return std::visit(
      overloaded{
          [x](const Normal& n) {
            if (n.sd == 0.0) return x >= n.mean ? 1.0 : 0.0;
            return normal::cdf((x - n.mean) / n.sd);
          },
          [x](const Lognormal& l) {
            if (x <= 0.0) return 0.0;
            return normal::cdf((std::log(x) - l.mu_log) / l.sd_log);
          },
          [x](const ParetoTypeI& p) {
            if (x <= p.x_m) return 0.0;
            return -std::expm1(-p.beta * std::log(x / p.x_m));
          },
          [x](const Degenerate& g) { return x >= g.value ? 1.0 : 0.0; }},
      d.variant());
}

double survival(const Distribution& d, double x) {
  return std::visit(
      overloaded{
          [x](const Normal& n) {
            if (n.sd == 0.0) return x >= n.mean ? 0.0 : 1.0;
            return normal::survival((x - n.mean) / n.sd);
          },
          [x](const Lognormal& l) {
            if (x <= 0.0) return 1.0;
            return normal::survival((std::log(x) - l.mu_log) / l.sd_log);
          },
          [x](const ParetoTypeI& p) {
            if (x <= p.x_m) return 1.0;
            return std::pow(x / p.x_m, -p.beta);
          },
          [x](const Degenerate& g) { return x >= g.value ? 0.0 : 1.0; }},
      d.variant());
}

double pdf(const Distribution& d, double x) {
  return std::visit(
      overloaded{
          [x](const Normal& n) {
            if (n.sd == 0.0) return x == n.mean ? kInf : 0.0;
            return normal::pdf((x - n.mean) / n.sd) / n.sd;
          },
          [x](const Lognormal& l) {
            if (x <= 0.0) return 0.0;
            return normal::pdf((std::log(x) - l.mu_log) / l.sd_log) / (l.sd_log * x);
          },
          [x](const ParetoTypeI& p) {
            if (x < p.x_m) return 0.0;
            return p.beta / x * std::pow(x / p.x_m, -p.beta);
          },
          [x](const Degenerate& g) { return x == g.value ? kInf : 0.0; }},
      d.variant());
}

double quantile(const Distribution& d, double p) {
  check_probability(p);
  return std::visit(
      overloaded{
          [p](const Normal& n) {
            if (n.sd == 0.0) return n.mean;
            return n.mean + n.sd * normal::quantile(p);
          },
          [p](const Lognormal& l) { return std::exp(l.mu_log + l.sd_log * normal::quantile(p)); },
          [p](const ParetoTypeI& t) { return t.x_m * std::pow(1.0 - p, -1.0 / t.beta); },
          [](const Degenerate& g) { return g.value; }},
      d.variant());
}

double sample(const Distribution& d, double u) { return quantile(d, u); }

double mean(const Distribution& d) {
  return std::visit(
      overloaded{[](const Normal& n) { return n.mean; },
                 [](const Lognormal& l) { return std::exp(l.mu_log + 0.5 * l.sd_log * l.sd_log); },
                 [](const ParetoTypeI& p) { return p.x_m * p.beta / (p.beta - 1.0); },
                 [](const Degenerate& g) { return g.value; }},
      d.variant());
}

double variance(const Distribution& d) {
  return std::visit(
      overloaded{[](const Normal& n) { return n.sd * n.sd; },
                 [](const Lognormal& l) {
                   const double s2 = l.sd_log * l.sd_log;
                   return std::expm1(s2) * std::exp(2.0 * l.mu_log + s2);
                 },
                 [](const ParetoTypeI& p) {
                   if (p.beta <= 2.0) return kInf;
                   const double b1 = p.beta - 1.0;
                   return p.x_m * p.x_m * p.beta / (b1 * b1 * (p.beta - 2.0));
                 },
                 [](const Degenerate&) { return 0.0; }},
      d.variant());
}

double stddev(const Distribution& d) { return std::sqrt(variance(d)); }

double stop_loss(const Distribution& d, double k) {
  return std::visit(
      overloaded{
          [k](const Normal& n) {
            const double gap = n.mean - k;
            if (n.sd == 0.0) return std::max(gap, 0.0);
            const double z = gap / n.sd;
            return gap * normal::cdf(z) + n.sd * normal::pdf(z);
          },
          [k, &d](const Lognormal& l) {
            if (k <= 0.0) return mean(d) - k;
            const double lk = std::log(k);
            return mean(d) * normal::cdf((l.mu_log + l.sd_log * l.sd_log - lk) / l.sd_log) -
                   k * normal::cdf((l.mu_log - lk) / l.sd_log);
          },
          [k, &d](const ParetoTypeI& p) {
            if (k <= p.x_m) return mean(d) - k;
            return k * std::pow(k / p.x_m, -p.beta) / (p.beta - 1.0);
          },
          [k](const Degenerate& g) { return std::max(g.value - k, 0.0); }},
      d.variant());
}

double support_min(const Distribution& d) {
  return std::visit(overloaded{[](const Normal& n) { return n.sd == 0.0 ? n.mean : -kInf; },
                               [](const Lognormal&) { return 0.0; },
                               [](const ParetoTypeI& p) { return p.x_m; },
                               [](const Degenerate& g) { return g.value; }},
                    d.variant());
}

bool is_nonnegative(const Distribution& d) { return support_min(d) >= 0.0; }

Distribution scaled(const Distribution& d, double a) {
  if (!(a > 0.0) || !std::isfinite(a)) throw DomainError("scaled: factor must be > 0");
  return std::visit(
      overloaded{[a](const Normal& n) { return Distribution(Normal{a * n.mean, a * n.sd}); },
                 [a](const Lognormal& l) {
                   return Distribution(Lognormal{l.mu_log + std::log(a), l.sd_log});
                 },
                 [a](const ParetoTypeI& p) {
                   return Distribution(ParetoTypeI{a * p.x_m, p.beta});
                 },
                 [a](const Degenerate& g) { return Distribution(Degenerate{a * g.value}); }},
      d.variant());
}

Lognormal lognormal_from_moments(double mean, double sd) {
  require(mean > 0.0 && std::isfinite(mean), "lognormal_from_moments: mean must be > 0");
  if (sd == 0.0) {
    throw DomainError("lognormal_from_moments: sd = 0 is a point mass, use Degenerate");
  }
  require(sd > 0.0 && std::isfinite(sd), "lognormal_from_moments: sd must be > 0");
  const double cv = sd / mean;
  const double s2 = std::log1p(cv * cv);
  return Lognormal{std::log(mean) - 0.5 * s2, std::sqrt(s2)};
}

ParetoTypeI pareto_from_moments(double mean, double sd) {
  require(mean > 0.0 && std::isfinite(mean), "pareto_from_moments: mean must be > 0");
  require(sd > 0.0 && std::isfinite(sd), "pareto_from_moments: sd must be > 0");
  // mean = x_m b/(b-1), cv^2 = 1/(b(b-2))  =>  b = 1 + sqrt(1 + 1/cv^2).
  const double cv = sd / mean;
  const double beta = 1.0 + std::sqrt(1.0 + 1.0 / (cv * cv));
  return ParetoTypeI{mean * (beta - 1.0) / beta, beta};
}

ParetoTypeI pareto_from_mean_beta(double mean, double beta) {
  require(mean > 0.0 && std::isfinite(mean), "pareto_from_mean_beta: mean must be > 0");
  if (!(beta > 1.0)) throw DomainError("pareto_from_mean_beta: beta <= 1 gives an infinite mean");
  return ParetoTypeI{mean * (beta - 1.0) / beta, beta};
}

std::string describe(const Distribution& d) {
  std::ostringstream os;
  os.precision(10);
  std::visit(overloaded{[&](const Normal& n) { os << "Normal(" << n.mean << ", " << n.sd << ")"; },
                        [&](const Lognormal& l) {
                          os << "Lognormal(" << l.mu_log << ", " << l.sd_log << ")";
                        },
                        [&](const ParetoTypeI& p) {
                          os << "ParetoTypeI(" << p.x_m << ", " << p.beta << ")";
                        },
                        [&](const Degenerate& g) { os << "Degenerate(" << g.value << ")"; }},
             d.variant());
  return os.str();
}

}  // namespace cocval
