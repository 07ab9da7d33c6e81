// critwave: pseudospectral simulator and verification harness for the
// semilinear damped wave equation with data of negative Sobolev order.
//
// Subcommands: params, simulate, decay-fit, lifespan, oracle, picard, plot.
// Exit contract: 0 success, 1 inadmissible parameters, 2 input error,
// 3 outside theorem scope, 4 numerical failure, 5 unexpected blow-up.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "critwave/config.hpp"
#include "critwave/runner.hpp"

namespace {

using namespace critwave;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void print_params_table(const RunConfig& cfg) {
  const ProblemParams p = cfg.problem();
  const DecayRates rates = expected_decay_rates(cfg.gamma);
  const char* kind = cfg.setting.kind == SettingKind::Euclidean ? "Euclidean" : "Heisenberg";

  std::printf("setting          %s n=%d (dim_h = %d)\n", kind, cfg.setting.n,
              cfg.setting.dim_h());
  std::printf("gamma            %.10g\n", cfg.gamma);
  std::printf("critical p       %.10g\n", p.p);
  if (std::isfinite(p.m)) std::printf("Lebesgue m       %.10g\n", p.m);
  if (std::isfinite(p.gamma_tilde))
    std::printf("gamma_tilde      %.10g\n", p.gamma_tilde);
  std::printf("decay rates      L2: (1+t)^-%.6g   grad: (1+t)^-%.6g\n", rates.l2,
              rates.grad);
  if (p.verdict.scope == TheoremScope::OutsideScope) {
    std::printf("verdict          outside theorem scope\n");
  } else {
    std::printf("verdict          %s\n", p.verdict.admissible ? "admissible" : "inadmissible");
  }
  for (const auto& v : p.verdict.violated)
    std::printf("  violated       %s  (value %.10g, bound %.10g)\n", v.name.c_str(),
                v.value, v.bound);
}

int run_config_command(ExperimentKind kind, const std::string& config_path,
                       const std::string& out_root) {
  RunConfig cfg = RunConfig::from_json_text(read_file(config_path));
  cfg.experiment = kind;
  const auto root = out_root.empty() ? default_out_root() : std::filesystem::path(out_root);
  const RunOutcome outcome = run_experiment(cfg, root);

  std::printf("run directory    %s\n", outcome.run_dir.string().c_str());
  std::printf("status           %s\n", outcome.manifest.status.c_str());
  for (const auto& [key, value] : outcome.manifest.headline)
    std::printf("  %-22s %.10g\n", key.c_str(), value);
  for (const auto& w : outcome.manifest.warnings)
    std::printf("  warning: %s\n", w.c_str());
  return outcome.code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pseudospectral verification harness for the critically damped wave problem"};
  app.require_subcommand(1);

  // params ------------------------------------------------------------
  auto* params = app.add_subcommand("params", "exponents and admissibility for (setting, gamma)");
  int euclid_n = 0, heis_n = 0;
  double gamma = 0;
  std::string params_out;
  auto* opt_e = params->add_option("--euclidean", euclid_n, "Euclidean dimension n");
  auto* opt_h = params->add_option("--heisenberg", heis_n, "Heisenberg index n");
  params->add_option("--gamma", gamma, "negative Sobolev order")->required();
  params->add_option("--out", params_out, "output root (default $CRITWAVE_OUT or ./runs)");
  opt_e->excludes(opt_h);

  // config-file experiments --------------------------------------------
  struct Sub {
    const char* name;
    const char* desc;
    ExperimentKind kind;
    CLI::App* cmd = nullptr;
    std::string config;
    std::string out;
  };
  Sub subs[] = {
      {"simulate", "evolve one configuration and store its trajectory",
       ExperimentKind::Simulate, nullptr, {}, {}},
      {"decay-fit", "fit log norm vs log(1+t) on a stored trajectory",
       ExperimentKind::DecayFit, nullptr, {}, {}},
      {"lifespan", "blow-up ladder: T_life(eps) scaling",
       ExperimentKind::Lifespan, nullptr, {}, {}},
      {"oracle", "numerically certify the Duhamel integral inequalities",
       ExperimentKind::Oracle, nullptr, {}, {}},
      {"picard", "explicit fixed-point iteration with contraction ratios",
       ExperimentKind::Picard, nullptr, {}, {}},
  };
  for (auto& s : subs) {
    s.cmd = app.add_subcommand(s.name, s.desc);
    s.cmd->add_option("config", s.config, "JSON run configuration")
        ->required()
        ->check(CLI::ExistingFile);
    s.cmd->add_option("--out", s.out, "output root (default $CRITWAVE_OUT or ./runs)");
  }

  // plot ----------------------------------------------------------------
  auto* plot = app.add_subcommand("plot", "emit a gnuplot script + data files for a run");
  std::string plot_dir;
  plot->add_option("dir", plot_dir, "run directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : critwave::exit_code::input_error;
  }

  try {
    if (params->parsed()) {
      if (euclid_n == 0 && heis_n == 0)
        throw std::invalid_argument("params: one of --euclidean/--heisenberg is required");
      RunConfig cfg;
      cfg.experiment = ExperimentKind::Params;
      cfg.setting = euclid_n > 0 ? Setting::euclidean(euclid_n) : Setting::heisenberg(heis_n);
      cfg.gamma = gamma;
      print_params_table(cfg);
      const auto root = params_out.empty() ? default_out_root() : std::filesystem::path(params_out);
      const RunOutcome outcome = run_experiment(cfg, root);
      std::printf("json             %s/params.json\n", outcome.run_dir.string().c_str());
      return outcome.code;
    }
    for (auto& s : subs)
      if (s.cmd->parsed()) return run_config_command(s.kind, s.config, s.out);
    if (plot->parsed()) return emit_plot(plot_dir);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return critwave::exit_code::input_error;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return critwave::exit_code::input_error;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return critwave::exit_code::numerical_failure;
  }
  return critwave::exit_code::input_error;
}
