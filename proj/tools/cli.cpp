#include "cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "cocval/errors.hpp"
#include "cocval/valuation.hpp"

namespace cocval::cli {

using nlohmann::json;

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void require_keys(const json& j, const std::set<std::string>& allowed, std::string_view where) {
  if (!j.is_object()) throw UsageError(std::string(where) + ": expected a JSON object");
  for (const auto& [key, _] : j.items()) {
    if (!allowed.contains(key)) {
      throw UsageError(std::string(where) + ": unknown key '" + key + "'");
    }
  }
}

double number(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number()) {
    throw UsageError(std::string("missing numeric field '") + key + "'");
  }
  return j.at(key).get<double>();
}

}  // namespace

std::string_view to_string(Method m) {
  switch (m) {
    case Method::automatic: return "auto";
    case Method::closed_form: return "closed_form";
    case Method::monte_carlo: return "monte_carlo";
  }
  return "auto";
}

Method parse_method(std::string_view s) {
  if (s == "auto") return Method::automatic;
  if (s == "closed_form") return Method::closed_form;
  if (s == "monte_carlo") return Method::monte_carlo;
  throw UsageError("unknown method '" + std::string(s) + "'");
}

Distribution parse_distribution(const json& j) {
  if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string()) {
    throw UsageError("distribution: expected an object with a string 'kind'");
  }
  const std::string kind = j.at("kind").get<std::string>();
  const bool moments = j.contains("mean") && j.contains("sd");
  if (kind == "normal") {
    require_keys(j, {"kind", "mean", "sd"}, "normal");
    return Normal{number(j, "mean"), number(j, "sd")};
  }
  if (kind == "lognormal") {
    if (moments) {
      require_keys(j, {"kind", "mean", "sd"}, "lognormal");
      return lognormal_from_moments(number(j, "mean"), number(j, "sd"));
    }
    require_keys(j, {"kind", "mu_log", "sd_log"}, "lognormal");
    return Lognormal{number(j, "mu_log"), number(j, "sd_log")};
  }
  if (kind == "pareto") {
    if (moments) {
      require_keys(j, {"kind", "mean", "sd"}, "pareto");
      return pareto_from_moments(number(j, "mean"), number(j, "sd"));
    }
    if (j.contains("mean")) {
      require_keys(j, {"kind", "mean", "beta"}, "pareto");
      return pareto_from_mean_beta(number(j, "mean"), number(j, "beta"));
    }
    require_keys(j, {"kind", "x_m", "beta"}, "pareto");
    return ParetoTypeI{number(j, "x_m"), number(j, "beta")};
  }
  if (kind == "degenerate") {
    require_keys(j, {"kind", "value"}, "degenerate");
    return Degenerate{number(j, "value")};
  }
  throw UsageError("distribution: unknown kind '" + kind + "'");
}

json to_json(const Distribution& d) {
  json j;
  j["kind"] = std::string(to_string(d.kind()));
  if (const auto* n = d.get_if<Normal>()) {
    j["mean"] = n->mean;
    j["sd"] = n->sd;
  } else if (const auto* l = d.get_if<Lognormal>()) {
    j["mu_log"] = l->mu_log;
    j["sd_log"] = l->sd_log;
  } else if (const auto* p = d.get_if<ParetoTypeI>()) {
    j["x_m"] = p->x_m;
    j["beta"] = p->beta;
  } else if (const auto* g = d.get_if<Degenerate>()) {
    j["value"] = g->value;
  }
  return j;
}

RunConfig parse_config(const json& j) {
  require_keys(j,
               {"claim", "asset", "w", "grid_step", "risk_measure", "eta", "method", "mc", "out"},
               "config");
  RunConfig cfg;
  if (j.contains("claim")) cfg.claim = parse_distribution(j.at("claim"));
  if (j.contains("asset")) cfg.asset = parse_distribution(j.at("asset"));
  if (j.contains("w")) cfg.w = number(j, "w");
  if (j.contains("grid_step")) cfg.grid_step = number(j, "grid_step");
  if (j.contains("eta")) cfg.eta = number(j, "eta");
  if (j.contains("risk_measure")) {
    const json& r = j.at("risk_measure");
    require_keys(r, {"kind", "alpha"}, "risk_measure");
    const RiskKind kind =
        r.contains("kind") ? parse_risk_kind(r.at("kind").get<std::string>()) : RiskKind::var;
    cfg.risk = RiskMeasure(kind, r.contains("alpha") ? number(r, "alpha") : cfg.risk.alpha());
  }
  if (j.contains("method")) cfg.method = parse_method(j.at("method").get<std::string>());
  if (j.contains("mc")) {
    const json& m = j.at("mc");
    require_keys(m, {"n", "seed"}, "mc");
    if (m.contains("n")) cfg.mc_n = m.at("n").get<std::size_t>();
    if (m.contains("seed")) cfg.seed = m.at("seed").get<std::uint64_t>();
  }
  if (j.contains("out")) cfg.out = j.at("out").get<std::string>();
  return cfg;
}

json to_json(const RunConfig& cfg) {
  json j;
  j["claim"] = to_json(cfg.claim);
  j["asset"] = to_json(cfg.asset);
  j["w"] = cfg.w;
  j["grid_step"] = cfg.grid_step;
  j["risk_measure"] = {{"kind", std::string(to_string(cfg.risk.kind()))},
                       {"alpha", cfg.risk.alpha()}};
  j["eta"] = cfg.eta;
  j["method"] = std::string(to_string(cfg.method));
  j["mc"] = {{"n", cfg.mc_n}, {"seed", cfg.seed}};
  j["out"] = cfg.out;
  return j;
}

// ---------------------------------------------------------------------------
// Figure presets

namespace {

struct Preset {
  Distribution claim;
  Distribution asset;
  RiskMeasure risk;
};

std::map<std::string, Preset> build_presets() {
  std::map<std::string, Preset> p;
  const RiskMeasure var = RiskMeasure::value_at_risk(0.005);
  const RiskMeasure es = RiskMeasure::expected_shortfall(0.01);
  const char* panels = "abc";
  const double sds[3] = {0.1, 0.2, 0.3};
  const double claim_sds[3] = {0.2, 0.4, 0.6};

  auto ln = [](double m, double s) { return Distribution(lognormal_from_moments(m, s)); };
  auto pa = [](double m, double s) { return Distribution(pareto_from_moments(m, s)); };

  for (int i = 0; i < 3; ++i) {
    const std::string k(1, panels[i]);
    // Gaussian model, closed form.
    p.emplace("fig1" + k, Preset{Normal{1.0, 0.3}, Normal{1.05, sds[i]}, var});
    p.emplace("fig2" + k, Preset{Normal{1.0, claim_sds[i]}, Normal{1.05, 0.2}, var});
    // Lognormal model, moment matched; fig5/fig6 show the V0 bounds of fig3/fig4.
    for (const char* id : {"fig3", "fig5"}) {
      p.emplace(id + k, Preset{ln(1.0, 0.3), ln(1.05, sds[i]), var});
    }
    for (const char* id : {"fig4", "fig6"}) {
      p.emplace(id + k, Preset{ln(1.0, claim_sds[i]), ln(1.05, 0.2), var});
    }
    p.emplace("fig9" + k, Preset{ln(1.0, 0.3), ln(1.02, sds[i]), var});
    p.emplace("fig10" + k, Preset{ln(1.0, claim_sds[i]), ln(1.02, 0.2), var});
    // Pareto claims, lognormal asset.
    p.emplace("fig11" + k, Preset{pa(1.0, 0.3), ln(1.05, sds[i]), var});
    p.emplace("fig12" + k, Preset{pa(1.0, claim_sds[i]), ln(1.05, 0.2), var});
    // ES_0.01 analogues of fig3 and fig4.
    p.emplace("fig8" + k, Preset{ln(1.0, 0.3), ln(1.05, sds[i]), es});
    p.emplace("fig7" + k, Preset{ln(1.0, claim_sds[i]), ln(1.05, 0.2), es});
  }
  p.emplace("fig15a", Preset{pareto_from_mean_beta(1.0, 2.0), ln(1.05, 0.2), var});
  p.emplace("fig15b", Preset{pareto_from_mean_beta(1.0, 1.1), ln(1.05, 0.2), var});
  return p;
}

const std::map<std::string, Preset>& presets() {
  static const auto table = build_presets();
  return table;
}

}  // namespace

std::vector<std::string> figure_ids() {
  std::vector<std::string> ids;
  for (const auto& [id, _] : presets()) ids.push_back(id);
  return ids;
}

RunConfig figure_preset(std::string_view id) {
  const auto it = presets().find(std::string(id));
  if (it == presets().end()) throw UsageError("unknown figure id '" + std::string(id) + "'");
  RunConfig cfg;
  cfg.claim = it->second.claim;
  cfg.asset = it->second.asset;
  cfg.risk = it->second.risk;
  return cfg;
}

// ---------------------------------------------------------------------------
// Commands

namespace {

struct Overrides {
  std::string config_path;
  std::optional<double> alpha;
  std::optional<double> eta;
  std::optional<double> w;
  std::optional<double> grid_step;
  std::optional<std::size_t> mc_n;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> risk;
  std::optional<std::string> method;
  std::optional<std::string> out;
  bool dump_config = false;
};

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw UsageError("config file '" + path + "': " + e.what());
  }
  return parse_config(j);
}

void apply_overrides(RunConfig& cfg, const Overrides& o, bool seed_from_file) {
  if (o.eta) cfg.eta = *o.eta;
  if (o.w) cfg.w = *o.w;
  if (o.grid_step) cfg.grid_step = *o.grid_step;
  if (o.mc_n) cfg.mc_n = *o.mc_n;
  if (o.method) cfg.method = parse_method(*o.method);
  if (o.out) cfg.out = *o.out;
  if (o.risk || o.alpha) {
    const RiskKind kind = o.risk ? parse_risk_kind(*o.risk) : cfg.risk.kind();
    cfg.risk = RiskMeasure(kind, o.alpha ? *o.alpha : cfg.risk.alpha());
  }
  if (o.seed) {
    cfg.seed = *o.seed;
  } else if (!seed_from_file) {
    if (const char* env = std::getenv("COC_SEED"); env != nullptr && *env != '\0') {
      try {
        cfg.seed = std::stoull(env);
      } catch (const std::exception&) {
        throw UsageError(std::string("COC_SEED is not an unsigned integer: ") + env);
      }
    }
  }
}

void validate(const RunConfig& cfg) {
  // Market and risk-measure constructors enforce their own preconditions.
  (void)MarketSpec(cfg.claim, cfg.asset, cfg.w, cfg.eta);
  if (!(cfg.grid_step > 0.0 && cfg.grid_step <= 1.0)) {
    throw UsageError("grid step must lie in (0, 1]");
  }
  if (cfg.mc_n == 0) throw UsageError("--mc-n must be >= 1");
}

json result_record(double w, const ValuationResult& v) {
  json j;
  j["w"] = w;
  j["r0"] = v.r0;
  j["c0"] = v.c0;
  j["v0"] = v.v0;
  j["llo"] = v.llo;
  j["v0_upper"] = v.v0_upper;
  j["v0_lower"] = v.v0_lower ? json(*v.v0_lower) : json(nullptr);
  j["method"] = {{"r0", std::string(to_string(v.r0_method))},
                 {"c0", std::string(to_string(v.c0_method))},
                 {"v0", std::string(to_string(v.v0_method))},
                 {"llo", std::string(to_string(v.llo_method))}};
  j["std_error"] = {{"r0", v.r0_se}, {"c0", v.c0_se}, {"v0", v.v0_se}, {"llo", v.llo_se}};
  j["residual"] = v.residual;
  j["iterations"] = v.iterations;
  return j;
}

class Output {
 public:
  Output(const std::string& path, std::ostream& fallback) : os_(&fallback) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw UsageError("cannot open output file '" + path + "'");
      os_ = &file_;
    }
  }
  std::ostream& stream() { return *os_; }

 private:
  std::ofstream file_;
  std::ostream* os_;
};

ValuationResult evaluate(const RunConfig& cfg) {
  const MarketSpec market(cfg.claim, cfg.asset, cfg.w, cfg.eta);
  if (cfg.method != Method::monte_carlo) {
    if (auto closed = value_closed_form(market, cfg.risk)) return *closed;
    if (cfg.method == Method::closed_form) {
      throw UsageError("no closed form for this market; use --method monte_carlo or auto");
    }
  }
  return value_monte_carlo(market, cfg.risk, generate(cfg.mc_n, cfg.seed));
}

int cmd_value(const RunConfig& cfg, std::ostream& out) {
  const ValuationResult v = evaluate(cfg);
  Output o(cfg.out, out);
  o.stream() << result_record(cfg.w, v).dump(2) << '\n';
  return kExitOk;
}

SweepResult run_sweep(const RunConfig& cfg) {
  const MarketTemplate tmpl{cfg.claim, cfg.asset, cfg.eta};
  const std::vector<double> grid = make_grid(cfg.grid_step);
  const bool gaussian =
      cfg.claim.is<Normal>() && (cfg.asset.is<Normal>() || cfg.asset.is<Degenerate>());
  if (cfg.method != Method::monte_carlo && gaussian) {
    return sweep_gaussian_closed_form(tmpl, cfg.risk, grid);
  }
  if (cfg.method == Method::closed_form) {
    throw UsageError("closed-form sweeps need a Normal claim and a Normal or degenerate asset");
  }
  return sweep(tmpl, cfg.risk, grid, generate(cfg.mc_n, cfg.seed));
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out) {
  const SweepResult r = run_sweep(cfg);
  Output o(cfg.out, out);
  write_sweep_csv(o.stream(), r);
  return kExitOk;
}

int cmd_pareto_example(double mean_claim, double alpha, double eta, const std::string& path,
                       std::ostream& out) {
  Output o(path, out);
  o.stream() << "beta,r0,llo,v0_upper,v0\n";
  for (double beta : {2.0, 1.1}) {
    const ValuationResult v = pareto_riskless_valuation(beta, mean_claim, alpha, eta);
    o.stream() << format_number(beta) << ',' << format_number(v.r0) << ','
               << format_number(v.llo) << ',' << format_number(v.v0_upper) << ','
               << format_number(v.v0) << '\n';
  }
  return kExitOk;
}

void add_common_options(CLI::App& sub, Overrides& o) {
  sub.add_option("--config", o.config_path, "JSON run configuration");
  sub.add_option("--alpha", o.alpha, "risk-measure level in (0, 1/2)");
  sub.add_option("--eta", o.eta, "cost-of-capital rate");
  sub.add_option("--mc-n", o.mc_n, "number of Monte Carlo scenarios");
  sub.add_option("--seed", o.seed, "scenario seed (fallback: COC_SEED)");
  sub.add_option("--risk-measure", o.risk, "var or es");
  sub.add_option("--method", o.method, "auto, closed_form or monte_carlo");
  sub.add_option("--out", o.out, "output path (default stdout)");
  sub.add_flag("--dump-config", o.dump_config, "print the resolved configuration and exit");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"cocval: cost-of-capital valuation with risky buffer capital", "cocval"};
  app.require_subcommand(1);

  Overrides o;
  std::string figure_id;
  double pareto_mean = 1.0;

  auto* value = app.add_subcommand("value", "value a single market configuration");
  add_common_options(*value, o);
  value->add_option("--w", o.w, "weight of the risky asset in [0,1]");

  auto* sweep_cmd = app.add_subcommand("sweep", "sweep the risky weight over a grid, CSV output");
  add_common_options(*sweep_cmd, o);
  sweep_cmd->add_option("--grid-step", o.grid_step, "grid step in (0,1]");

  auto* figure = app.add_subcommand("figure", "sweep a figure preset, CSV output");
  add_common_options(*figure, o);
  figure->add_option("--grid-step", o.grid_step, "grid step in (0,1]");
  figure->add_option("id", figure_id, "preset id (fig1a ... fig15b)")->required();

  auto* pareto = app.add_subcommand("pareto-example", "Pareto claim with a risk-less bond");
  pareto->add_option("--alpha", o.alpha, "VaR level");
  pareto->add_option("--eta", o.eta, "cost-of-capital rate");
  pareto->add_option("--mean", pareto_mean, "mean claim E[X1]");
  pareto->add_option("--out", o.out, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n' << app.help();
    return kExitUsage;
  }

  try {
    if (pareto->parsed()) {
      return cmd_pareto_example(pareto_mean, o.alpha.value_or(0.005), o.eta.value_or(0.06),
                                o.out.value_or(""), out);
    }
    RunConfig cfg;
    bool seed_from_file = false;
    if (figure->parsed()) {
      cfg = figure_preset(figure_id);
    }
    if (!o.config_path.empty()) {
      cfg = load_config_file(o.config_path);
      std::ifstream in(o.config_path);
      const json raw = json::parse(in);
      seed_from_file = raw.contains("mc") && raw.at("mc").contains("seed");
    }
    apply_overrides(cfg, o, seed_from_file);
    validate(cfg);
    if (o.dump_config) {
      out << to_json(cfg).dump(2) << '\n';
      return kExitOk;
    }
    if (value->parsed()) return cmd_value(cfg, out);
    return cmd_sweep(cfg, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const NoSolution& e) {
    err << "no solution: " << e.what() << '\n';
    return kExitNoSolution;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace cocval::cli
