#include "cocval/montecarlo.hpp"

#include <cmath>

#include "cocval/errors.hpp"
#include "cocval/summation.hpp"

namespace cocval {
namespace {

constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;
constexpr std::uint64_t kStreamConstants[2] = {0x6A09E667F3BCC908ULL, 0xBB67AE8584CAA73BULL};

double to_unit(std::uint64_t bits) {
  return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double stream_uniform(std::uint64_t seed, unsigned stream, std::uint64_t index) {
  const std::uint64_t key = mix64(seed ^ kStreamConstants[stream & 1U]);
  return to_unit(mix64(key + (index + 1) * kGamma));
}

ScenarioSet generate(std::size_t n, std::uint64_t seed) {
  if (n == 0) throw DomainError("generate: scenario count must be >= 1");
  ScenarioSet scen;
  scen.n = n;
  scen.seed = seed;
  scen.u_s.resize(n);
  scen.u_x.resize(n);
  const std::uint64_t key_s = mix64(seed ^ kStreamConstants[0]);
  const std::uint64_t key_x = mix64(seed ^ kStreamConstants[1]);
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint64_t step = (static_cast<std::uint64_t>(i) + 1) * kGamma;
    scen.u_s[i] = to_unit(mix64(key_s + step));
    scen.u_x[i] = to_unit(mix64(key_x + step));
  }
  return scen;
}

McEstimate estimate_mean(std::span<const double> values) {
  const std::size_t n = values.size();
  if (n == 0) throw DomainError("estimate_mean: empty sample");
  const double m = pairwise_sum(values) / static_cast<double>(n);
  if (n == 1) return {m, 0.0, n};
  const double ss = pairwise_sum_of(0, n, [&](std::size_t i) {
    const double d = values[i] - m;
    return d * d;
  });
  return {m, std::sqrt(ss / static_cast<double>(n - 1) / static_cast<double>(n)), n};
}

McEstimate estimate_mean_positive_part(std::span<const double> values) {
  std::vector<double> pos(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) pos[i] = values[i] > 0.0 ? values[i] : 0.0;
  return estimate_mean(pos);
}

McEstimate estimate_mean_negative_part(std::span<const double> values) {
  std::vector<double> neg(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) neg[i] = values[i] < 0.0 ? -values[i] : 0.0;
  return estimate_mean(neg);
}

MarketSamples draw_market(const ScenarioSet& scen, const Distribution& claim,
                          const Distribution& asset) {
  MarketSamples out;
  out.asset.resize(scen.n);
  out.claim.resize(scen.n);
  for (std::size_t i = 0; i < scen.n; ++i) {
    out.asset[i] = sample(asset, scen.u_s[i]);
    out.claim[i] = sample(claim, scen.u_x[i]);
  }
  return out;
}

std::vector<double> net_worth_sample(const MarketSamples& samples, double w, double r) {
  std::vector<double> y(samples.size());
  for (std::size_t i = 0; i < y.size(); ++i) {
    y[i] = r * portfolio_return(w, samples.asset[i]) - samples.claim[i];
  }
  return y;
}

std::vector<double> net_worth_sample(const ScenarioSet& scen, const MarketSpec& market, double r) {
  if (r < 0.0) throw DomainError("net_worth_sample: r must be >= 0");
  return net_worth_sample(draw_market(scen, market.claim, market.asset), market.w, r);
}

}  // namespace cocval
