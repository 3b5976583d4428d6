#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "doctest.h"

using namespace cocval;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run_cli(std::initializer_list<std::string> args) {
  std::vector<std::string> storage{"cocval"};
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& s : storage) argv.push_back(s.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("cocval_test_" + name)).string();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream(path) << text;
}

std::vector<std::vector<double>> parse_table(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    std::vector<double> row;
    std::istringstream ls(line);
    for (std::string cell; std::getline(ls, cell, ',');) row.push_back(std::stod(cell));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

TEST_CASE("pareto-example table") {
  const Run r = run_cli({"pareto-example"});
  REQUIRE(r.code == cli::kExitOk);
  CHECK(r.out.rfind("beta,r0,llo,v0_upper,v0\n", 0) == 0);
  const auto rows = parse_table(r.out);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0][0] == 2.0);
  CHECK(rows[0][1] == doctest::Approx(7.07).epsilon(0.001));
  CHECK(rows[0][2] == doctest::Approx(0.0334).epsilon(0.02));
  CHECK(rows[0][3] == doctest::Approx(1.344).epsilon(0.002));
  CHECK(rows[0][4] == doctest::Approx(1.310).epsilon(0.002));
  CHECK(rows[1][1] == doctest::Approx(11.23).epsilon(0.001));
  CHECK(rows[1][2] == doctest::Approx(0.53).epsilon(0.01));
  CHECK(rows[1][3] == doctest::Approx(1.58).epsilon(0.005));
  CHECK(rows[1][4] == doctest::Approx(1.05).epsilon(0.005));

  const auto doubled = parse_table(run_cli({"pareto-example", "--mean", "2"}).out);
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 1; j < 5; ++j) {
      CHECK(doubled[i][j] == doctest::Approx(2 * rows[i][j]).epsilon(1e-13));
    }
  }
}

TEST_CASE("value uses the defaults and the closed form") {
  const Run r = run_cli({"value"});
  REQUIRE(r.code == cli::kExitOk);
  const json j = json::parse(r.out);
  CHECK(j["r0"].get<double>() == doctest::Approx(1.7727487910646702).epsilon(1e-12));
  CHECK(j["method"]["r0"] == "closed_form");
  CHECK(j["w"] == 0.0);

  const json w1 = json::parse(run_cli({"value", "--w", "1"}).out);
  CHECK(w1["r0"].get<double>() == doctest::Approx(2.299348515399235).epsilon(1e-12));

  const json mc = json::parse(run_cli({"value", "--w", "1", "--method", "monte_carlo",
                                       "--mc-n", "100000"})
                                  .out);
  CHECK(mc["method"]["r0"] == "bisection");
  CHECK(mc["std_error"]["r0"].get<double>() > 0.0);
}

TEST_CASE("exit codes") {
  CHECK(run_cli({}).code == cli::kExitUsage);
  CHECK(run_cli({"value", "--bogus"}).code == cli::kExitUsage);
  CHECK(run_cli({"value", "--alpha", "0.7"}).code == cli::kExitUsage);
  CHECK(run_cli({"value", "--w", "1.5"}).code == cli::kExitUsage);
  CHECK(run_cli({"value", "--risk-measure", "cvar"}).code == cli::kExitUsage);
  CHECK(run_cli({"figure", "fig99"}).code == cli::kExitUsage);
  CHECK(run_cli({"sweep", "--grid-step", "0"}).code == cli::kExitUsage);
  CHECK(run_cli({"value", "--config", temp_path("missing.json")}).code == cli::kExitUsage);

  const std::string cfg = temp_path("weak_asset.json");
  write_file(cfg, R"({"asset": {"kind": "normal", "mean": 0.5, "sd": 0.2}, "w": 1})");
  const Run r = run_cli({"value", "--config", cfg});
  CHECK(r.code == cli::kExitNoSolution);
  CHECK(r.err.find("no solution") != std::string::npos);

  const std::string bad = temp_path("unknown_key.json");
  write_file(bad, R"({"wieght": 0.5})");
  CHECK(run_cli({"value", "--config", bad}).code == cli::kExitUsage);

  const std::string ln = temp_path("mixture.json");
  write_file(ln, R"({"claim": {"kind": "lognormal", "mean": 1, "sd": 0.3},
                    "asset": {"kind": "lognormal", "mean": 1.05, "sd": 0.2}, "w": 0.5})");
  CHECK(run_cli({"value", "--config", ln, "--method", "closed_form"}).code == cli::kExitUsage);
}

TEST_CASE("dump-config round-trips") {
  const Run first = run_cli({"figure", "fig11b", "--eta", "0.05", "--seed", "9", "--dump-config"});
  REQUIRE(first.code == cli::kExitOk);
  const std::string path = temp_path("roundtrip.json");
  write_file(path, first.out);
  const Run second = run_cli({"value", "--config", path, "--dump-config"});
  REQUIRE(second.code == cli::kExitOk);
  CHECK(json::parse(first.out) == json::parse(second.out));

  const cli::RunConfig cfg = cli::figure_preset("fig7c");
  CHECK(cli::parse_config(cli::to_json(cfg)) == cfg);
}

TEST_CASE("distribution specs accept native and moment forms") {
  const Distribution a = cli::parse_distribution(json::parse(R"({"kind":"lognormal","mean":1,"sd":0.3})"));
  CHECK(mean(a) == doctest::Approx(1.0).epsilon(1e-12));
  const Distribution b = cli::parse_distribution(json::parse(R"({"kind":"pareto","mean":1,"beta":2})"));
  CHECK(b.get_if<ParetoTypeI>()->x_m == doctest::Approx(0.5));
  const Distribution c = cli::parse_distribution(json::parse(R"({"kind":"degenerate","value":1})"));
  CHECK(c == Distribution(Degenerate{1.0}));
  CHECK(cli::parse_distribution(cli::to_json(a)) == a);
  CHECK(cli::parse_distribution(cli::to_json(b)) == b);
  CHECK_THROWS(cli::parse_distribution(json::parse(R"({"kind":"gamma"})")));
  CHECK_THROWS(cli::parse_distribution(json::parse(R"({"kind":"normal","mean":1})")));
}

TEST_CASE("seed precedence: flag, then config, then COC_SEED") {
  const std::string path = temp_path("seeded.json");
  write_file(path, R"({"mc": {"seed": 5}})");
  ::setenv("COC_SEED", "77", 1);
  auto seed_of = [](const Run& r) { return json::parse(r.out)["mc"]["seed"].get<std::uint64_t>(); };
  CHECK(seed_of(run_cli({"value", "--dump-config"})) == 77);
  CHECK(seed_of(run_cli({"value", "--config", path, "--dump-config"})) == 5);
  CHECK(seed_of(run_cli({"value", "--config", path, "--seed", "3", "--dump-config"})) == 3);
  ::setenv("COC_SEED", "not-a-number", 1);
  CHECK(run_cli({"value", "--dump-config"}).code == cli::kExitUsage);
  ::unsetenv("COC_SEED");
  CHECK(seed_of(run_cli({"value", "--dump-config"})) == 1);
}

TEST_CASE("figure presets") {
  const auto ids = cli::figure_ids();
  CHECK(ids.size() == 38);
  for (const auto& id : ids) {
    const cli::RunConfig c = cli::figure_preset(id);
    CHECK(c.eta == 0.06);
    CHECK(c.mc_n == 1'000'000);
    CHECK(c.grid_step == 0.001);
  }
  const cli::RunConfig f1b = cli::figure_preset("fig1b");
  CHECK(f1b.claim == Distribution(Normal{1.0, 0.3}));
  CHECK(f1b.asset == Distribution(Normal{1.05, 0.2}));
  CHECK(f1b.risk == RiskMeasure::value_at_risk(0.005));
  const cli::RunConfig f4c = cli::figure_preset("fig4c");
  CHECK(stddev(f4c.claim) == doctest::Approx(0.6).epsilon(1e-12));
  CHECK(mean(f4c.asset) == doctest::Approx(1.05).epsilon(1e-12));
  CHECK(cli::figure_preset("fig8a").risk == RiskMeasure::expected_shortfall(0.01));
  CHECK(mean(cli::figure_preset("fig9a").asset) == doctest::Approx(1.02).epsilon(1e-12));
  CHECK(cli::figure_preset("fig15b").claim.get_if<ParetoTypeI>()->beta == 1.1);
  CHECK(cli::figure_preset("fig12a").claim.is<ParetoTypeI>());
}

TEST_CASE("sweep writes CSV to --out") {
  const std::string path = temp_path("sweep.csv");
  const Run r = run_cli({"figure", "fig1b", "--grid-step", "0.001", "--out", path});
  REQUIRE(r.code == cli::kExitOk);
  CHECK(r.out.empty());
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  const std::string csv = ss.str();
  CHECK(csv.rfind("w,r0,c0,v0,v0_upper,v0_lower,llo,r0_se,c0_se,v0_se\n", 0) == 0);
  const auto tail = csv.substr(csv.find("w_star"));
  CHECK(tail.find("\n0.083,") != std::string::npos);
}
