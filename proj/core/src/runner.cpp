#include "critwave/runner.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <future>
#include <iostream>

#include <json.hpp>

#include "critwave/analysis.hpp"
#include "critwave/csv.hpp"
#include "critwave/norms.hpp"

namespace critwave {

namespace {

using nlohmann::json;

void write_text(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + p.string());
  out << text;
}

void write_json(const std::filesystem::path& p, const json& j) {
  write_text(p, j.dump(2) + "\n");
}

json verdict_to_json(const AdmissibilityVerdict& v) {
  json out;
  out["admissible"] = v.admissible;
  out["scope"] = v.scope == TheoremScope::InScope ? "in-scope" : "outside-theorem-scope";
  json viol = json::array();
  for (const auto& c : v.violated)
    viol.push_back({{"constraint", c.name}, {"value", c.value}, {"bound", c.bound}});
  out["violated"] = viol;
  return out;
}

json nan_safe(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

// --- per-experiment bodies ---------------------------------------------------

int run_params(const RunConfig& cfg, const std::filesystem::path& dir, RunManifest& m) {
  const ProblemParams p = cfg.problem();
  const DecayRates rates = expected_decay_rates(cfg.gamma);

  json j;
  j["setting"] = {{"kind", cfg.setting.kind == SettingKind::Euclidean ? "euclidean" : "heisenberg"},
                  {"n", cfg.setting.n},
                  {"dim_h", cfg.setting.dim_h()}};
  j["gamma"] = cfg.gamma;
  j["critical_p"] = p.p;
  j["lebesgue_m"] = nan_safe(p.m);
  j["gamma_tilde"] = nan_safe(p.gamma_tilde);
  j["decay_rate_l2"] = rates.l2;
  j["decay_rate_grad"] = rates.grad;
  j["verdict"] = verdict_to_json(p.verdict);
  write_json(dir / "params.json", j);
  m.produced_files.push_back("params.json");

  m.headline["critical_p"] = p.p;
  m.headline["admissible"] = p.verdict.admissible ? 1.0 : 0.0;
  m.status = "ok";
  if (p.verdict.scope == TheoremScope::OutsideScope) return exit_code::out_of_scope;
  return p.verdict.admissible ? exit_code::ok : exit_code::inadmissible;
}

void check_wraparound(const RunConfig& cfg, const Grid& grid, const DataSpec& data,
                      RunManifest& m) {
  if (data.kind == ProfileKind::SlowDecayPositive) return;  // torus-filling by design
  const InitialData probe = synthesize(data, grid, cfg.gamma);
  if (!wraparound_ok(grid, probe.support_radius, cfg.horizon)) {
    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "wrap-around margin violated: L = %g < support %.3g + horizon %g + 10; "
                  "re-entrant fronts may contaminate late-time decay",
                  grid.half_width(), probe.support_radius, cfg.horizon);
    m.warnings.push_back(buf);
    std::cerr << "[critwave] warning: " << buf << "\n";
  }
}

Trajectory run_one_simulation(const RunConfig& cfg) {
  const ProblemParams params = cfg.problem();
  const Nonlinearity f = cfg.make_nonlinearity(params);
  const DataSpec data = cfg.resolved_data();
  const Grid grid = cfg.make_grid();
  SimulateOptions opts;
  opts.sampling = cfg.sampling;
  opts.override_admissibility = cfg.override_admissibility;
  Trajectory traj = simulate(params, f, data, grid, cfg.controller, cfg.horizon, opts);
  traj.config_hash = cfg.hash();
  return traj;
}

int run_simulate(const RunConfig& cfg, const std::filesystem::path& dir, RunManifest& m) {
  check_wraparound(cfg, cfg.make_grid(), cfg.resolved_data(), m);
  const Trajectory traj = run_one_simulation(cfg);

  write_trajectory_csv(dir / "trajectory.csv", traj);
  m.produced_files.push_back("trajectory.csv");

  const bool blew_up = traj.status == Trajectory::Status::BlowUp;
  m.status = blew_up ? "blow-up" : "ok";
  m.headline["reached_horizon"] = blew_up ? 0.0 : 1.0;
  if (blew_up) {
    m.headline["t_life"] = traj.t_life;
    m.headline["bracket_width"] = traj.bracket_width;
  } else {
    m.headline["final_l2"] = traj.samples.back().l2;
    m.headline["max_tail_fraction"] = traj.max_tail_fraction;
    if (traj.under_resolved) m.warnings.push_back("run flagged under-resolved (spectral tail energy > 1e-6)");
  }
  if (blew_up && cfg.expect_global) return exit_code::unexpected_blowup;
  return exit_code::ok;
}

int run_decay_fit(const RunConfig& cfg, const std::filesystem::path& dir, RunManifest& m) {
  if (cfg.input.empty())
    throw std::invalid_argument("decay-fit: config.input must point to a trajectory CSV");
  const auto samples = read_trajectory_csv(cfg.input);
  if (samples.empty()) throw std::invalid_argument("decay-fit: empty trajectory");

  const double t_end = samples.back().t;
  FitWindow window{cfg.fit.t_lo.value_or(t_end / 10.0), cfg.fit.t_hi.value_or(t_end)};
  const DecayFit fit = fit_decay(samples, cfg.fit.column, window);

  json j;
  j["input"] = cfg.input;
  const char* col = cfg.fit.column == NormColumn::L2      ? "L2"
                    : cfg.fit.column == NormColumn::H1dot ? "H1dot"
                    : cfg.fit.column == NormColumn::Linf  ? "Linf"
                                                          : "Hneg";
  j["column"] = col;
  j["slope"] = fit.slope;
  j["intercept"] = fit.intercept;
  j["stderr_slope"] = fit.stderr_slope;
  j["window"] = {{"t_lo", fit.window.t_lo}, {"t_hi", fit.window.t_hi}};
  j["n_points"] = fit.n_points;
  j["expected_rate_l2"] = -expected_decay_rates(cfg.gamma).l2;
  j["expected_rate_grad"] = -expected_decay_rates(cfg.gamma).grad;
  write_json(dir / "fit.json", j);
  m.produced_files.push_back("fit.json");

  m.status = "ok";
  m.headline["slope"] = fit.slope;
  m.headline["stderr_slope"] = fit.stderr_slope;
  return exit_code::ok;
}

int run_lifespan(const RunConfig& cfg, const std::filesystem::path& dir, RunManifest& m) {
  if (cfg.ladder.size() < 4)
    throw std::invalid_argument("lifespan: ladder needs >= 4 eps values");

  // Members are independent jobs; run them concurrently and collect in
  // ladder order so outputs do not depend on scheduling.
  std::vector<std::future<Trajectory>> futures;
  for (double eps : cfg.ladder) {
    RunConfig member = cfg;
    member.experiment = ExperimentKind::Simulate;
    member.expect_global = false;
    if (member.data.target_eps)
      member.data.target_eps = eps;
    else
      member.data.amplitude = eps;
    futures.push_back(std::async(std::launch::async,
                                 [member] { return run_one_simulation(member); }));
  }
  std::vector<Trajectory> runs;
  runs.reserve(futures.size());
  for (auto& f : futures) runs.push_back(f.get());

  for (std::size_t i = 0; i < runs.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof name, "trajectory-%02zu.csv", i);
    write_trajectory_csv(dir / name, runs[i]);
    m.produced_files.push_back(name);
  }

  std::size_t cursor = 0;
  const LifespanFit fit = lifespan_sweep(
      [&](double) { return runs.at(cursor++); }, cfg.ladder);

  json j;
  json pairs = json::array();
  for (const auto& p : fit.pairs)
    pairs.push_back({{"eps", p.eps}, {"t_life", p.t_life}, {"bracket_width", p.bracket_width}});
  j["pairs"] = pairs;
  j["reached_horizon_eps"] = fit.reached_horizon;
  j["has_fit"] = fit.has_fit;
  j["slope"] = fit.has_fit ? json(fit.slope) : json(nullptr);
  j["intercept"] = fit.has_fit ? json(fit.intercept) : json(nullptr);
  j["stderr_slope"] = fit.has_fit ? json(fit.stderr_slope) : json(nullptr);
  j["monotone"] = fit.monotone;
  write_json(dir / "lifespan.json", j);
  m.produced_files.push_back("lifespan.json");

  for (double eps : fit.reached_horizon) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "eps = %g reached the horizon; excluded from the fit", eps);
    m.warnings.push_back(buf);
  }
  m.status = "ok";
  m.headline["n_blowup"] = double(fit.pairs.size());
  if (fit.has_fit) m.headline["slope"] = fit.slope;
  return exit_code::ok;
}

int run_oracle(const RunConfig& cfg, const std::filesystem::path& dir, RunManifest& m) {
  if (cfg.oracle.cases.empty())
    throw std::invalid_argument("oracle: no cases configured");
  const auto grid = geometric_grid(cfg.oracle.t_lo, cfg.oracle.t_hi, cfg.oracle.t_points);

  json rows = json::array();
  std::string csv = "kind,branch,n,gamma,j,p,a,b,claimed_rate,sup_ratio,argmax_t,status\n";
  double worst = 0;

  auto run_case = [&](const IntegralCase& c, const char* kind, const char* branch) {
    json row;
    row["kind"] = kind;
    row["branch"] = branch;
    row["n"] = c.n;
    row["gamma"] = c.gamma;
    row["j"] = c.j;
    row["p"] = c.p;
    char line[256];
    try {
      const OracleResult r = integral_oracle(c, grid);
      row["a"] = c.a();
      row["b"] = c.b();
      row["claimed_rate"] = c.claimed_rate();
      row["sup_ratio"] = r.sup_ratio;
      row["argmax_t"] = r.argmax_t;
      row["status"] = "ok";
      worst = std::max(worst, r.sup_ratio);
      std::snprintf(line, sizeof line, "%s,%s,%d,%.17g,%d,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,ok\n",
                    kind, branch, c.n, c.gamma, c.j, c.p, c.a(), c.b(), c.claimed_rate(),
                    r.sup_ratio, r.argmax_t);
    } catch (const std::domain_error& e) {
      row["status"] = std::string("refused: ") + e.what();
      std::snprintf(line, sizeof line, "%s,%s,%d,%.17g,%d,%.17g,,,,,,refused\n",
                    kind, branch, c.n, c.gamma, c.j, c.p);
      m.warnings.push_back(std::string("refused case: ") + e.what());
    }
    rows.push_back(row);
    csv += line;
  };

  for (const auto& spec : cfg.oracle.cases) {
    const Setting s = Setting::euclidean(spec.n);
    const double p = critical_exponent(s, spec.gamma);
    IntegralCase near{IntegralKind::NearField, spec.n, spec.j, spec.gamma, p,
                      ProofBranch::MOne};
    run_case(near, "near-field", "-");
    if (p >= 2.0) {
      IntegralCase far{IntegralKind::FarField, spec.n, spec.j, spec.gamma, p,
                       ProofBranch::MOne};
      run_case(far, "far-field", "m=1");
    }
    if (p <= 2.0) {
      IntegralCase far{IntegralKind::FarField, spec.n, spec.j, spec.gamma, p,
                       ProofBranch::MTwoOverP};
      run_case(far, "far-field", "m=2/p");
    }
  }

  json j;
  j["t_grid"] = {{"lo", cfg.oracle.t_lo}, {"hi", cfg.oracle.t_hi}, {"points", cfg.oracle.t_points}};
  j["cases"] = rows;
  write_json(dir / "oracle.json", j);
  write_text(dir / "oracle.csv", csv);
  m.produced_files.push_back("oracle.json");
  m.produced_files.push_back("oracle.csv");

  m.status = "ok";
  m.headline["worst_sup_ratio"] = worst;
  return exit_code::ok;
}

int run_picard(const RunConfig& cfg, const std::filesystem::path& dir, RunManifest& m) {
  const ProblemParams params = cfg.problem();
  if (!params.verdict.admissible && !cfg.override_admissibility)
    throw std::invalid_argument("picard: parameters outside the admissible window");
  const Nonlinearity f = cfg.make_nonlinearity(params);
  const Grid grid = cfg.make_grid();
  const InitialData init = synthesize(cfg.resolved_data(), grid, cfg.gamma);

  const PicardResult res = picard_iterate(init.u0, init.u1, f, cfg.gamma, cfg.horizon,
                                          cfg.picard_iterations, cfg.sampling);

  json j;
  json its = json::array();
  std::string csv = "k,t,L2,H1dot\n";
  for (const auto& it : res.iterates) {
    its.push_back({{"k", it.k},
                   {"x_norm", it.x_norm},
                   {"delta", nan_safe(it.delta)}});
    for (const auto& s : it.series) {
      char line[160];
      std::snprintf(line, sizeof line, "%d,%.17g,%.17g,%.17g\n", it.k, s.t, s.l2, s.h1dot);
      csv += line;
    }
  }
  j["iterates"] = its;
  j["deltas"] = res.deltas;
  j["contraction_ratios"] = res.contraction_ratios;
  write_json(dir / "picard.json", j);
  write_text(dir / "picard.csv", csv);
  m.produced_files.push_back("picard.json");
  m.produced_files.push_back("picard.csv");

  m.status = "ok";
  if (!res.deltas.empty()) m.headline["delta0"] = res.deltas.front();
  if (!res.contraction_ratios.empty()) {
    double mx = 0;
    for (double r : res.contraction_ratios) mx = std::max(mx, r);
    m.headline["max_contraction_ratio"] = mx;
  }
  return exit_code::ok;
}

}  // namespace

std::filesystem::path default_out_root() {
  if (const char* env = std::getenv("CRITWAVE_OUT")) return env;
  return "runs";
}

RunOutcome run_experiment(const RunConfig& cfg, const std::filesystem::path& out_root) {
  RunOutcome out;
  const std::string hash = cfg.hash();
  out.run_dir = out_root / (to_string(cfg.experiment) + "-" + hash.substr(0, 12));
  std::filesystem::create_directories(out.run_dir);

  RunManifest& m = out.manifest;
  m.config_hash = hash;
  m.started_at = utc_now_iso8601();

  write_text(out.run_dir / "config.json", cfg.to_json_text());
  m.produced_files.push_back("config.json");

  try {
    switch (cfg.experiment) {
      case ExperimentKind::Params:   out.code = run_params(cfg, out.run_dir, m); break;
      case ExperimentKind::Simulate: out.code = run_simulate(cfg, out.run_dir, m); break;
      case ExperimentKind::DecayFit: out.code = run_decay_fit(cfg, out.run_dir, m); break;
      case ExperimentKind::Lifespan: out.code = run_lifespan(cfg, out.run_dir, m); break;
      case ExperimentKind::Oracle:   out.code = run_oracle(cfg, out.run_dir, m); break;
      case ExperimentKind::Picard:   out.code = run_picard(cfg, out.run_dir, m); break;
    }
  } catch (const ControllerExhaustion& e) {
    m.status = std::string("failed: ") + e.what();
    out.code = exit_code::numerical_failure;
  } catch (const std::invalid_argument& e) {
    m.status = std::string("failed: ") + e.what();
    out.code = exit_code::input_error;
  } catch (const std::domain_error& e) {
    m.status = std::string("failed: ") + e.what();
    out.code = exit_code::input_error;
  } catch (const std::exception& e) {
    m.status = std::string("failed: ") + e.what();
    out.code = exit_code::numerical_failure;
  }

  m.finished_at = utc_now_iso8601();
  m.write(out.run_dir);
  return out;
}

int emit_plot(const std::filesystem::path& run_dir) {
  if (!std::filesystem::exists(run_dir / "manifest.json") ||
      !std::filesystem::exists(run_dir / "config.json")) {
    std::cerr << "[critwave] plot: " << run_dir << " is not a completed run directory\n";
    return exit_code::input_error;
  }

  RunConfig cfg;
  try {
    std::ifstream in(run_dir / "config.json");
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    cfg = RunConfig::from_json_text(text);
  } catch (const std::exception& e) {
    std::cerr << "[critwave] plot: bad config.json: " << e.what() << "\n";
    return exit_code::input_error;
  }

  if (std::filesystem::exists(run_dir / "trajectory.csv")) {
    const auto samples = read_trajectory_csv(run_dir / "trajectory.csv");
    if (samples.empty()) return exit_code::input_error;

    std::string norms;
    for (const auto& s : samples) {
      char line[200];
      std::snprintf(line, sizeof line, "%.17g %.17g %.17g %.17g %.17g\n", s.t, s.l2,
                    s.h1dot, s.linf, s.hneg);
      norms += line;
    }
    write_text(run_dir / "plot_norms.dat", norms);

    // Guide lines anchored on the first sample past the pre-asymptotic regime.
    const DecayRates rates = expected_decay_rates(cfg.gamma);
    const TrajectorySample* anchor = &samples.back();
    for (const auto& s : samples)
      if (s.t >= std::max(1.0, samples.back().t / 10.0)) { anchor = &s; break; }
    const double c_l2 = anchor->l2 * std::pow(1.0 + anchor->t, rates.l2);
    const double c_h1 = anchor->h1dot * std::pow(1.0 + anchor->t, rates.grad);
    std::string guides;
    for (const auto& s : samples) {
      if (s.t < 1.0) continue;
      char line[160];
      std::snprintf(line, sizeof line, "%.17g %.17g %.17g\n", s.t,
                    c_l2 * std::pow(1.0 + s.t, -rates.l2),
                    c_h1 * std::pow(1.0 + s.t, -rates.grad));
      guides += line;
    }
    write_text(run_dir / "plot_guides.dat", guides);

    std::string gp;
    gp += "# gnuplot script; run `gnuplot plot.gp` in this directory\n";
    gp += "set terminal pngcairo size 960,640\n";
    gp += "set output 'decay.png'\n";
    gp += "set logscale xy\n";
    gp += "set xlabel '1+t'\nset ylabel 'norm'\nset key left bottom\n";
    gp += "plot 'plot_norms.dat' u ($1+1):2 w lp pt 6 ps 0.4 t 'L2', \\\n";
    gp += "     'plot_norms.dat' u ($1+1):3 w lp pt 4 ps 0.4 t 'H1dot', \\\n";
    gp += "     'plot_guides.dat' u ($1+1):2 w l dt 2 lc 'black' t 'reference (1+t)^{-g/2}', \\\n";
    gp += "     'plot_guides.dat' u ($1+1):3 w l dt 3 lc 'black' t 'reference (1+t)^{-(g+1)/2}'\n";
    write_text(run_dir / "plot.gp", gp);
    return exit_code::ok;
  }

  if (std::filesystem::exists(run_dir / "lifespan.json")) {
    std::ifstream in(run_dir / "lifespan.json");
    json j;
    in >> j;
    std::string dat;
    for (const auto& p : j.at("pairs")) {
      char line[160];
      std::snprintf(line, sizeof line, "%.17g %.17g %.17g\n", p.at("eps").get<double>(),
                    p.at("t_life").get<double>(), p.at("bracket_width").get<double>());
      dat += line;
    }
    write_text(run_dir / "lifespan.dat", dat);

    std::string gp;
    gp += "# gnuplot script; run `gnuplot plot.gp` in this directory\n";
    gp += "set terminal pngcairo size 960,640\n";
    gp += "set output 'lifespan.png'\n";
    gp += "set logscale xy\n";
    gp += "set xlabel 'eps'\nset ylabel 'T_life'\n";
    if (j.value("has_fit", false)) {
      const double slope = j.at("slope").get<double>();
      const double intercept = j.at("intercept").get<double>();
      char fdef[160];
      std::snprintf(fdef, sizeof fdef, "f(x) = exp(%.17g) * x**(%.17g)\n", intercept, slope);
      gp += fdef;
      char title[96];
      std::snprintf(title, sizeof title, "fit slope %.3f", slope);
      gp += "plot 'lifespan.dat' u 1:2 w p pt 7 t 'T_life(eps)', f(x) w l dt 2 t '" +
            std::string(title) + "'\n";
    } else {
      gp += "plot 'lifespan.dat' u 1:2 w p pt 7 t 'T_life(eps)'\n";
    }
    write_text(run_dir / "plot.gp", gp);
    return exit_code::ok;
  }

  std::cerr << "[critwave] plot: nothing to plot in " << run_dir << "\n";
  return exit_code::input_error;
}

}  // namespace critwave
