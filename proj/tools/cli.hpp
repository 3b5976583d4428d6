#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cocval/analysis.hpp"
#include "cocval/distributions.hpp"
#include "cocval/montecarlo.hpp"
#include "cocval/risk_measures.hpp"
#include "json.hpp"

namespace cocval::cli {

enum class Method { automatic, closed_form, monte_carlo };

std::string_view to_string(Method m);
Method parse_method(std::string_view s);

// A complete run description. Defaults follow the paper's base case:
// eta = 0.06, VaR at alpha = 0.005, 10^6 scenarios.
struct RunConfig {
  Distribution claim = Normal{1.0, 0.3};
  Distribution asset = Normal{1.05, 0.2};
  double w = 0.0;
  double grid_step = 0.001;
  RiskMeasure risk = RiskMeasure::value_at_risk(0.005);
  double eta = 0.06;
  Method method = Method::automatic;
  std::size_t mc_n = kDefaultScenarioCount;
  std::uint64_t seed = 1;
  std::string out;  // empty: stdout

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

// {"kind": "normal"|"lognormal"|"pareto"|"degenerate", ...} with native
// parameters or a {"mean", "sd"} moment form ({"mean", "beta"} for pareto).
Distribution parse_distribution(const nlohmann::json& j);
nlohmann::json to_json(const Distribution& d);

RunConfig parse_config(const nlohmann::json& j);
nlohmann::json to_json(const RunConfig& cfg);

std::vector<std::string> figure_ids();
RunConfig figure_preset(std::string_view id);

// Entry point; returns the process exit code
// (0 success, 1 internal error, 2 usage, 3 no solution).
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNoSolution = 3;

}  // namespace cocval::cli
