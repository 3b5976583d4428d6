#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "cocval/market.hpp"

namespace cocval {

// Common random numbers: one pair of uniform streams reused for every
// distribution, capital level r and weight w.
//
// Uniforms come from a counter-based SplitMix64 construction: stream j of a
// seed has key k_j = mix64(seed ^ c_j) (c_j fixed constants), and its i-th
// value is mix64(k_j + (i + 1) * 0x9E3779B97F4A7C15) mapped to
// ((bits >> 11) + 0.5) * 2^-53, which lies strictly inside (0, 1).
// Element i can be computed independently of all others.
struct ScenarioSet {
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::vector<double> u_s;  // drives S1
  std::vector<double> u_x;  // drives X1
};

inline constexpr std::size_t kDefaultScenarioCount = 1'000'000;

std::uint64_t mix64(std::uint64_t z);
double stream_uniform(std::uint64_t seed, unsigned stream, std::uint64_t index);

ScenarioSet generate(std::size_t n, std::uint64_t seed);

struct McEstimate {
  double value = 0.0;
  double std_error = 0.0;
  std::size_t n = 0;
};

// Sample mean with standard error sd / sqrt(n) (sd with divisor n - 1).
McEstimate estimate_mean(std::span<const double> values);
McEstimate estimate_mean_positive_part(std::span<const double> values);
McEstimate estimate_mean_negative_part(std::span<const double> values);

// Asset and claim draws obtained by inverse transform of a scenario set.
// The Z1 draw for weight w is portfolio_return(w, asset[i]).
struct MarketSamples {
  std::vector<double> asset;
  std::vector<double> claim;

  std::size_t size() const { return claim.size(); }
};

MarketSamples draw_market(const ScenarioSet& scen, const Distribution& claim,
                          const Distribution& asset);

// Y_i = r * Z1_i - X1_i, on the same scenarios for every (r, w).
std::vector<double> net_worth_sample(const ScenarioSet& scen, const MarketSpec& market, double r);
std::vector<double> net_worth_sample(const MarketSamples& samples, double w, double r);

}  // namespace cocval
