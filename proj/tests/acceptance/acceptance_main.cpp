// Acceptance suite: one criterion per function, one PASS/FAIL line per
// criterion, measured numbers on the detail lines. Exit code = number of
// failed criteria. Run with a list of criterion numbers or none for all.

#include <algorithm>
#include <chrono>
#include <cstdarg>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "critwave/analysis.hpp"
#include "critwave/config.hpp"
#include "critwave/csv.hpp"
#include "critwave/evolve.hpp"
#include "critwave/exponents.hpp"
#include "critwave/initdata.hpp"
#include "critwave/norms.hpp"
#include "critwave/runner.hpp"

using namespace critwave;
namespace fs = std::filesystem;

namespace {

struct Checker {
  bool ok = true;
  std::vector<std::string> notes;

  void require(bool cond, const char* fmt, ...) {
    char buf[512];
    va_list args;
    va_start(args, fmt);
    std::vsnprintf(buf, sizeof buf, fmt, args);
    va_end(args);
    notes.push_back(std::string(cond ? "    ok   " : "    FAIL ") + buf);
    ok = ok && cond;
  }

  void note(const char* fmt, ...) {
    char buf[512];
    va_list args;
    va_start(args, fmt);
    std::vsnprintf(buf, sizeof buf, fmt, args);
    va_end(args);
    notes.push_back(std::string("    .    ") + buf);
  }
};

// --- C1: exponent identities -------------------------------------------------

void c1(Checker& c) {
  for (int n : {3, 4, 5, 6}) {
    const double g = gamma_tilde(Setting::euclidean(n));
    const double res = std::abs(2 * g * g + n * g - 2 * n);
    c.require(res < 1e-12, "gamma_tilde residual n=%d: %.3e", n, res);
    c.require(g > 0.5 * n - 2.0 && g < 0.5 * n,
              "chain n/2-2 < gamma_tilde < n/2 at n=%d (%.7f)", n, g);
  }
  for (int n : {1, 2}) {
    const Setting s = Setting::heisenberg(n);
    const double q = s.dim_h();
    const double g = gamma_tilde(s);
    const double res = std::abs(2 * g * g + q * g - 2 * q);
    c.require(res < 1e-12, "gamma_tilde residual Q=%g: %.3e", q, res);
  }
  int points = 0;
  double worst = 0;
  for (int n = 1; n <= 6; ++n) {
    for (int i = 1; i <= 17; ++i) {
      const double gamma = 0.5 * n * i / 18.0;
      const double m = lebesgue_index(n, gamma);
      const double p = critical_exponent(Setting::euclidean(n), gamma);
      worst = std::max(worst, std::abs(p - (1.0 + 2.0 * m / n)));
      ++points;
    }
  }
  c.require(points >= 100 && worst < 1e-12,
            "second-critical identity on %d-point grid, worst %.3e", points, worst);
}

// --- C2: propagator vs RK4 -----------------------------------------------------

PropagatorEntries rk4_mode(double t, double k2, double dt) {
  auto run = [&](double w0, double v0) {
    double w = w0, v = v0, time = 0;
    while (time < t) {
      const double h = std::min(dt, t - time);
      auto acc = [&](double wi, double vi) { return -vi - k2 * wi; };
      const double k1w = v, k1v = acc(w, v);
      const double k2w = v + 0.5 * h * k1v, k2v = acc(w + 0.5 * h * k1w, v + 0.5 * h * k1v);
      const double k3w = v + 0.5 * h * k2v, k3v = acc(w + 0.5 * h * k2w, v + 0.5 * h * k2v);
      const double k4w = v + h * k3v, k4v = acc(w + h * k3w, v + h * k3v);
      w += h / 6.0 * (k1w + 2 * k2w + 2 * k3w + k4w);
      v += h / 6.0 * (k1v + 2 * k2v + 2 * k3v + k4v);
      time += h;
    }
    return std::pair<double, double>{w, v};
  };
  const auto [a, at] = run(1.0, 0.0);
  const auto [b, bt] = run(0.0, 1.0);
  return {a, b, at, bt};
}

void c2(Checker& c) {
  const double k2s[] = {0.0, 0.01, 0.2401, 0.25, 0.2601, 1.0, 25.0};
  const double ts[] = {0.1, 1.0, 10.0};
  double worst = 0;
  for (double k2 : k2s) {
    for (double t : ts) {
      const auto ex = propagator_entries(t, k2);
      const auto rk = rk4_mode(t, k2, 1e-5);
      const auto rel = [](double a, double b) {
        return std::abs(a - b) / std::max(std::abs(b), 1e-9);
      };
      const double e = std::max({rel(ex.a, rk.a), rel(ex.b, rk.b),
                                 rel(ex.a_t, rk.a_t), rel(ex.b_t, rk.b_t)});
      worst = std::max(worst, e);
      if (e >= 1e-6) c.note("worst entry at k2=%.4f t=%.1f: rel %.2e", k2, t, e);
    }
  }
  c.require(worst < 1e-6, "7x3 (k2,t) grid incl. double root, worst rel err %.2e", worst);
}

// --- C3: linear decay reproduction ---------------------------------------------

void c3(Checker& c) {
  const Grid grid = Grid::make(1, 4096, 256.0);
  const double horizon = 200.0;
  for (double gamma : {0.15, 0.25, 0.4}) {
    const ProblemParams params = ProblemParams::critical(Setting::euclidean(1), gamma);
    DataSpec data;
    data.kind = ProfileKind::PowerLawProfile;
    data.sigma = sharp_rate_sigma(1, gamma, 0.01);
    StepController ctl;
    const Trajectory traj =
        simulate(params, Nonlinearity::zero(), data, grid, ctl, horizon, {});
    const auto fw = default_fit_window(horizon);
    const DecayFit fl2 = fit_decay(traj, NormColumn::L2, fw);
    const DecayFit fh1 = fit_decay(traj, NormColumn::H1dot, fw);
    const double target_l2 = -(0.5 * gamma + 0.005);
    const double target_h1 = -(0.5 * (gamma + 1.0) + 0.005);
    c.require(std::abs(fl2.slope - target_l2) < 0.05,
              "gamma=%.2f L2 slope %.4f vs %.4f (diff %+.4f, tol 0.05)", gamma,
              fl2.slope, target_l2, fl2.slope - target_l2);
    c.require(std::abs(fh1.slope - target_h1) < 0.08,
              "gamma=%.2f H1 slope %.4f vs %.4f (diff %+.4f, tol 0.08)", gamma,
              fh1.slope, target_h1, fh1.slope - target_h1);
  }
}

// --- C4: critical-case global existence ----------------------------------------

Trajectory critical_run(double eps, double horizon) {
  const ProblemParams params = ProblemParams::critical(Setting::euclidean(1), 0.25);
  const Grid grid = Grid::make(1, 8192, 512.0);
  DataSpec data;
  data.kind = ProfileKind::GaussianBump;
  data.target_eps = eps;
  StepController ctl;
  return simulate(params, Nonlinearity::abs_power(params.p), data, grid, ctl, horizon, {});
}

void c4(Checker& c) {
  const Trajectory a = critical_run(1e-2, 400.0);
  c.require(a.status == Trajectory::Status::ReachedHorizon,
            "eps=1e-2 run reached the horizon T=400");
  if (a.status != Trajectory::Status::ReachedHorizon) return;
  const auto ba = bound_check(a, 0.25);
  c.require(ba.trend == BoundTrend::Bounded, "weighted sups bounded (trend)");
  c.require(std::isfinite(ba.sup_l2) && std::isfinite(ba.sup_grad),
            "sup_l2 %.4e, sup_grad %.4e finite", ba.sup_l2, ba.sup_grad);
  c.require(!a.under_resolved, "dealiasing guard clean (max tail fraction %.2e)",
            a.max_tail_fraction);

  const Trajectory b = critical_run(0.5e-2, 400.0);
  c.require(b.status == Trajectory::Status::ReachedHorizon, "eps/2 run reached the horizon");
  if (b.status != Trajectory::Status::ReachedHorizon) return;
  const auto bb = bound_check(b, 0.25);
  const double r1 = ba.sup_l2 / bb.sup_l2;
  const double r2 = ba.sup_grad / bb.sup_grad;
  c.require(r1 > 1.7 && r1 < 2.3, "sup_l2 ratio eps/(eps/2) = %.4f in [1.7, 2.3]", r1);
  c.require(r2 > 1.7 && r2 < 2.3, "sup_grad ratio eps/(eps/2) = %.4f in [1.7, 2.3]", r2);
}

// --- C5: contraction of the fixed-point map -------------------------------------

void c5(Checker& c) {
  const ProblemParams params = ProblemParams::critical(Setting::euclidean(1), 0.25);
  const Grid grid = Grid::make(1, 8192, 512.0);
  const Nonlinearity f = Nonlinearity::abs_power(params.p);
  const double horizon = 400.0;

  DataSpec data;
  data.kind = ProfileKind::GaussianBump;
  data.target_eps = 1e-2;
  const InitialData init = synthesize(data, grid, params.gamma);

  SampleSpec coarse;  // default t0 = 0.1, ratio = 1.1
  const PicardResult res =
      picard_iterate(init.u0, init.u1, f, params.gamma, horizon, 4, coarse);
  bool all_below_half = !res.contraction_ratios.empty();
  for (std::size_t k = 0; k < res.contraction_ratios.size(); ++k) {
    const double r = res.contraction_ratios[k];
    c.note("ratio delta_%zu/delta_%zu = %.3e", k + 1, k, r);
    all_below_half = all_below_half && r < 0.5;
  }
  c.require(all_below_half, "all %zu successive X-norm ratios below 1/2",
            res.contraction_ratios.size());

  // tau-quadrature robustness: doubling the snapshot density moves the
  // final X-norm by less than 1%.
  SampleSpec fine;
  fine.ratio = std::sqrt(1.1);
  const PicardResult res_fine =
      picard_iterate(init.u0, init.u1, f, params.gamma, horizon, 4, fine);
  const double xk = res.iterates.back().x_norm;
  const double xk_fine = res_fine.iterates.back().x_norm;
  c.require(std::abs(xk - xk_fine) < 0.01 * xk_fine,
            "quadrature check: x_norm_K %.6e vs %.6e (%.3f%%)", xk, xk_fine,
            100.0 * std::abs(xk - xk_fine) / xk_fine);

  // first-correction scaling ~ eps^p under doubling
  data.target_eps = 2e-2;
  const InitialData init2 = synthesize(data, grid, params.gamma);
  const PicardResult res2 =
      picard_iterate(init2.u0, init2.u1, f, params.gamma, horizon, 3, coarse);
  const double measured = res2.deltas[0] / res.deltas[0];
  const double expected = std::pow(2.0, params.p);
  c.require(std::abs(measured - expected) < 0.2 * expected,
            "delta_0 doubling factor %.4f vs 2^p = %.4f (20%% tol)", measured, expected);
}

// --- C6: subcritical blow-up and lifespan ---------------------------------------

void c6(Checker& c) {
  const ProblemParams params = ProblemParams::critical(Setting::euclidean(1), 0.25);
  const Grid grid = Grid::make(1, 2048, 200.0);
  const Nonlinearity f = Nonlinearity::abs_power(2.0);  // q = 2 < Fujita 3

  auto run_at = [&](double eps) {
    DataSpec data;
    data.kind = ProfileKind::SlowDecayPositive;
    data.mu = 1.2;
    data.amplitude = eps;
    StepController ctl;
    ctl.dt_min = 1e-8;
    return simulate(params, f, data, grid, ctl, 50000.0, {});
  };

  const double ladder[] = {0.4, 0.2, 0.1, 0.05};
  const LifespanFit fit = lifespan_sweep(run_at, ladder);
  for (const auto& p : fit.pairs)
    c.note("eps=%.2f  T_life=%.6g  (bracket %.1e)", p.eps, p.t_life, p.bracket_width);
  c.require(fit.pairs.size() == 4, "every ladder run blows up (%zu/4)", fit.pairs.size());
  c.require(fit.monotone, "T_life strictly increasing as eps decreases");
  c.require(fit.has_fit && fit.slope < -0.5 && fit.slope > -4.0,
            "fitted log-log slope %.4f in [-4, -0.5]", fit.has_fit ? fit.slope : 0.0);
}

// --- C7: integral oracle --------------------------------------------------------

void c7(Checker& c) {
  struct Sample { int n; double gamma; };
  const Sample samples[] = {{1, 0.15}, {1, 0.25}, {1, 0.4}, {2, 0.5},
                            {2, 0.9},  {3, 0.4},  {3, 0.75}, {3, 1.0}};
  const auto base = geometric_grid(1.0, 1e3, 40);
  const auto ext = geometric_grid(1.0, 1e4, 50);

  bool all_ok = true;
  for (const auto& s : samples) {
    const double p = critical_exponent(Setting::euclidean(s.n), s.gamma);
    std::vector<IntegralCase> cases;
    for (int j : {0, 1}) {
      cases.push_back({IntegralKind::NearField, s.n, j, s.gamma, p, ProofBranch::MOne});
      if (p >= 2.0)
        cases.push_back({IntegralKind::FarField, s.n, j, s.gamma, p, ProofBranch::MOne});
      if (p <= 2.0)
        cases.push_back({IntegralKind::FarField, s.n, j, s.gamma, p, ProofBranch::MTwoOverP});
    }
    for (const auto& cs : cases) {
      const auto r1 = integral_oracle(cs, base);
      const auto r2 = integral_oracle(cs, ext);
      const double drift = std::abs(r2.sup_ratio - r1.sup_ratio) / r1.sup_ratio;
      const bool finite = std::isfinite(r1.sup_ratio) && std::isfinite(r2.sup_ratio);
      const bool ok = finite && drift < 0.10;
      all_ok = all_ok && ok;
      c.note("%s n=%d g=%.2f j=%d %s: sup %.4f -> %.4f drift %.1f%%%s",
             cs.which == IntegralKind::NearField ? "near" : "far ", s.n, s.gamma,
             cs.j, cs.which == IntegralKind::FarField
                       ? (cs.branch == ProofBranch::MOne ? "m=1  " : "m=2/p")
                       : "     ",
             r1.sup_ratio, r2.sup_ratio, 100.0 * drift, ok ? "" : "  <-- over 10%");
    }
  }
  c.require(all_ok, "sup_ratio finite and drift < 10%% for every branch/sample");

  bool refused = false;
  std::string msg;
  try {
    const double gamma = 1.2;  // above gamma_tilde(3)
    const double p = critical_exponent(Setting::euclidean(3), gamma);
    IntegralCase bad{IntegralKind::FarField, 3, 0, gamma, p, ProofBranch::MTwoOverP};
    integral_oracle(bad, base);
  } catch (const std::domain_error& e) {
    refused = true;
    msg = e.what();
  }
  c.require(refused && msg.find("gamma*p/2 < 1 violated") != std::string::npos,
            "gamma > gamma_tilde refused with the named condition (%s)", msg.c_str());
}

// --- C8: infrastructure ---------------------------------------------------------

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void c8(Checker& c) {
  // Parseval on pseudo-random fields in 1, 2, 3 dimensions
  for (int n : {1, 2, 3}) {
    const Grid g = Grid::make(n, n == 1 ? 4096 : (n == 2 ? 128 : 16), 10.0);
    std::vector<double> u(g.size());
    unsigned state = 12345u + static_cast<unsigned>(n);
    for (auto& x : u) {
      state = state * 1664525u + 1013904223u;
      x = static_cast<double>(state) / 4294967296.0 - 0.5;
    }
    const auto f = transform_forward(g, std::span<const double>(u));
    double phys = 0, spec = 0;
    for (double x : u) phys += x * x;
    for (const auto& m : f.modes) spec += std::norm(m);
    const double rel = std::abs(phys - spec) / phys;
    c.require(rel < 1e-10, "Parseval %dd rel err %.2e", n, rel);
  }

  // config round trip
  RunConfig cfg;
  cfg.experiment = ExperimentKind::Simulate;
  cfg.setting = Setting::euclidean(1);
  cfg.gamma = 0.25;
  cfg.grid = {256, 64.0};
  cfg.data.kind = ProfileKind::GaussianBump;
  cfg.data.target_eps = 0.01;
  cfg.horizon = 30.0;
  const RunConfig back = RunConfig::from_json_text(cfg.to_json_text());
  c.require(back == cfg && back.hash() == cfg.hash(), "config round-trip identity");

  // byte-identical reruns
  const fs::path root = fs::temp_directory_path() / "critwave_acceptance_c8";
  fs::remove_all(root);
  const RunOutcome r1 = run_experiment(cfg, root);
  const std::string bytes1 = slurp(r1.run_dir / "trajectory.csv");
  const RunOutcome r2 = run_experiment(cfg, root);
  const std::string bytes2 = slurp(r2.run_dir / "trajectory.csv");
  c.require(r1.code == 0 && r2.code == 0 && !bytes1.empty() && bytes1 == bytes2,
            "identical config twice: identical trajectory bytes (%zu bytes)",
            bytes1.size());

  // GN ratio dilation invariance on an effectively band-limited profile
  const Grid g = Grid::make(1, 1024, 30.0);
  auto field_at = [&](double lambda) {
    std::vector<double> s(g.size());
    for (int i = 0; i < g.points_per_dim(); ++i) {
      const double x = lambda * g.coordinate(i);
      s[static_cast<std::size_t>(i)] = std::exp(-0.5 * x * x);
    }
    return transform_forward(g, std::span<const double>(s));
  };
  const double base_ratio = gn_ratio(field_at(1.0), 4.0);
  double worst = 0;
  for (double lambda : {0.5, 2.0})
    worst = std::max(worst, std::abs(gn_ratio(field_at(lambda), 4.0) - base_ratio) / base_ratio);
  c.require(worst < 1e-6, "GN dilation drift %.2e < 1e-6", worst);
}

struct Criterion {
  int id;
  const char* title;
  std::function<void(Checker&)> body;
};

}  // namespace

int main(int argc, char** argv) {
  const Criterion criteria[] = {
      {1, "exponent identities and admissibility chain", c1},
      {2, "propagator matches brute-force RK4 mode integration", c2},
      {3, "linear decay rates for sharp-rate data (N=4096, L=256)", c3},
      {4, "critical-case global existence and bounded weighted sups", c4},
      {5, "fixed-point contraction ratios and eps^p first correction", c5},
      {6, "subcritical blow-up ladder and lifespan scaling", c6},
      {7, "Duhamel integral oracle: stability and refusal", c7},
      {8, "infrastructure: Parseval, round trip, reruns, GN dilation", c8},
  };

  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));

  int failures = 0;
  for (const auto& crit : criteria) {
    if (!selected.empty() &&
        std::find(selected.begin(), selected.end(), crit.id) == selected.end())
      continue;
    Checker ck;
    const auto start = std::chrono::steady_clock::now();
    try {
      crit.body(ck);
    } catch (const std::exception& e) {
      ck.require(false, "unexpected exception: %s", e.what());
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("[%s] C%d: %s (%.1fs)\n", ck.ok ? "PASS" : "FAIL", crit.id,
                crit.title, secs);
    for (const auto& n : ck.notes) std::printf("%s\n", n.c_str());
    if (!ck.ok) ++failures;
  }
  return failures;
}
