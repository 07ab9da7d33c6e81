#include "critwave/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "critwave/quadrature.hpp"

namespace critwave {

namespace {

double column_value(const TrajectorySample& s, NormColumn c) {
  switch (c) {
    case NormColumn::L2: return s.l2;
    case NormColumn::H1dot: return s.h1dot;
    case NormColumn::Linf: return s.linf;
    case NormColumn::Hneg: return s.hneg;
  }
  return 0;
}

struct LeastSquares {
  double slope = 0, intercept = 0, stderr_slope = 0;
  int n = 0;
};

LeastSquares fit_loglog(std::span<const double> x, std::span<const double> y) {
  const int n = static_cast<int>(x.size());
  double sx = 0, sy = 0;
  for (int i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0;
  for (int i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (!(sxx > 0)) throw std::invalid_argument("fit: degenerate abscissa");
  LeastSquares ls;
  ls.n = n;
  ls.slope = sxy / sxx;
  ls.intercept = my - ls.slope * mx;
  if (n > 2) {
    double ss = 0;
    for (int i = 0; i < n; ++i) {
      const double r = y[i] - (ls.intercept + ls.slope * x[i]);
      ss += r * r;
    }
    ls.stderr_slope = std::sqrt(ss / (n - 2) / sxx);
  }
  return ls;
}

}  // namespace

DecayFit fit_decay(std::span<const TrajectorySample> samples, NormColumn column,
                   FitWindow window) {
  if (!(window.t_lo >= 1.0))
    throw std::invalid_argument("fit_decay: window must start at t >= 1");
  if (!(window.t_hi > window.t_lo))
    throw std::invalid_argument("fit_decay: empty window");

  std::vector<double> x, y;
  for (const auto& s : samples) {
    if (s.t < window.t_lo || s.t > window.t_hi) continue;
    const double v = column_value(s, column);
    if (!(v > 0))
      throw std::invalid_argument("fit_decay: non-positive norm value in window");
    x.push_back(std::log1p(s.t));
    y.push_back(std::log(v));
  }
  if (x.size() < 8)
    throw std::invalid_argument("fit_decay: fewer than 8 samples in window");

  const LeastSquares ls = fit_loglog(x, y);
  DecayFit fit;
  fit.slope = ls.slope;
  fit.intercept = ls.intercept;
  fit.stderr_slope = ls.stderr_slope;
  fit.window = window;
  fit.n_points = ls.n;
  return fit;
}

DecayFit fit_decay(const Trajectory& traj, NormColumn column, FitWindow window) {
  return fit_decay(std::span<const TrajectorySample>(traj.samples), column, window);
}

BoundCheckResult bound_check(const Trajectory& traj, double gamma) {
  if (traj.status != Trajectory::Status::ReachedHorizon)
    throw std::invalid_argument("bound_check: trajectory did not reach the horizon");
  if (traj.samples.empty())
    throw std::invalid_argument("bound_check: empty trajectory");

  const double t_end = traj.samples.back().t;
  const double split = t_end / 10.0;

  BoundCheckResult r;
  double early_l2 = 0, late_l2 = 0, early_gr = 0, late_gr = 0;
  for (const auto& s : traj.samples) {
    const double wl2 = std::pow(1.0 + s.t, 0.5 * gamma) * s.l2;
    const double wgr = std::pow(1.0 + s.t, 0.5 * (gamma + 1.0)) * s.h1dot;
    r.sup_l2 = std::max(r.sup_l2, wl2);
    r.sup_grad = std::max(r.sup_grad, wgr);
    if (s.t >= split) {
      late_l2 = std::max(late_l2, wl2);
      late_gr = std::max(late_gr, wgr);
    } else {
      early_l2 = std::max(early_l2, wl2);
      early_gr = std::max(early_gr, wgr);
    }
  }
  const bool bounded = late_l2 < 1.05 * early_l2 && late_gr < 1.05 * early_gr;
  r.trend = bounded ? BoundTrend::Bounded : BoundTrend::Growing;
  return r;
}

double IntegralCase::a() const {
  if (which == IntegralKind::NearField) return 0.5 * j;
  if (branch == ProofBranch::MOne) return 0.25 * n + 0.5 * j;
  return 0.25 * n * (p - 1.0) + 0.5 * j;
}

double IntegralCase::b() const {
  if (which == IntegralKind::NearField) return 1.0 + 0.5 * gamma;
  if (branch == ProofBranch::MOne) return -(0.25 * n - 1.0 - 0.5 * gamma);
  return 0.5 * gamma * p;
}

void IntegralCase::validate() const {
  if (j != 0 && j != 1) throw std::domain_error("IntegralCase: j must be 0 or 1");
  if (!(gamma > 0)) throw std::domain_error("IntegralCase: gamma must be positive");
  if (which == IntegralKind::NearField) return;
  if (!(p > 1)) throw std::domain_error("IntegralCase: p must be > 1");
  if (branch == ProofBranch::MOne) {
    if (!(p >= 2.0))
      throw std::domain_error("IntegralCase: p >= 2 required for the m = 1 branch");
    if (!(0.25 * n - 1.0 - 0.5 * gamma > -1.0))
      throw std::domain_error(
          "IntegralCase: convergence condition gamma < n/2 violated "
          "(n/4 - 1 - gamma/2 <= -1)");
  } else {
    if (!(p <= 2.0))
      throw std::domain_error("IntegralCase: p <= 2 required for the m = 2/p branch");
    if (!(0.5 * gamma * p < 1.0))
      throw std::domain_error("IntegralCase: convergence condition gamma*p/2 < 1 violated");
  }
}

OracleResult integral_oracle(const IntegralCase& c, std::span<const double> t_grid,
                             double quad_rel_tol) {
  c.validate();
  if (t_grid.empty()) throw std::invalid_argument("integral_oracle: empty t grid");

  OracleResult out{0.0, 0.0};
  for (double t : t_grid) {
    if (!(t >= 1.0)) throw std::invalid_argument("integral_oracle: t grid must start at t >= 1");
    const double aa = c.a(), bb = c.b();
    const auto integrand = [&](double tau) {
      return std::pow(1.0 + t - tau, -aa) * std::pow(1.0 + tau, -bb);
    };
    const double lo = c.which == IntegralKind::NearField ? 0.5 * t : 0.0;
    const double hi = c.which == IntegralKind::NearField ? t : 0.5 * t;
    const double integral = integrate(integrand, lo, hi, quad_rel_tol);
    const double ratio = integral * std::pow(1.0 + t, c.claimed_rate());
    if (ratio > out.sup_ratio) {
      out.sup_ratio = ratio;
      out.argmax_t = t;
    }
  }
  return out;
}

std::vector<double> geometric_grid(double lo, double hi, int points) {
  if (!(lo > 0) || !(hi > lo) || points < 2)
    throw std::invalid_argument("geometric_grid: need 0 < lo < hi, points >= 2");
  std::vector<double> g(static_cast<std::size_t>(points));
  const double r = std::pow(hi / lo, 1.0 / (points - 1));
  double x = lo;
  for (int i = 0; i < points; ++i, x *= r) g[static_cast<std::size_t>(i)] = x;
  g.back() = hi;
  return g;
}

LifespanFit lifespan_sweep(const std::function<Trajectory(double)>& run_at_eps,
                           std::span<const double> ladder) {
  if (ladder.size() < 4)
    throw std::invalid_argument("lifespan_sweep: ladder needs >= 4 points");
  for (std::size_t i = 1; i < ladder.size(); ++i)
    if (!(ladder[i] < ladder[i - 1]))
      throw std::invalid_argument("lifespan_sweep: eps must be strictly decreasing");

  LifespanFit fit;
  for (double eps : ladder) {
    const Trajectory traj = run_at_eps(eps);
    if (traj.status == Trajectory::Status::BlowUp)
      fit.pairs.push_back({eps, traj.t_life, traj.bracket_width});
    else
      fit.reached_horizon.push_back(eps);
  }

  if (fit.pairs.size() >= 2) {
    std::vector<double> x, y;
    for (const auto& p : fit.pairs) {
      x.push_back(std::log(p.eps));
      y.push_back(std::log(p.t_life));
    }
    const LeastSquares ls = fit_loglog(x, y);
    fit.slope = ls.slope;
    fit.intercept = ls.intercept;
    fit.stderr_slope = ls.stderr_slope;
    fit.has_fit = true;
  }

  fit.monotone = fit.pairs.size() >= 2;
  for (std::size_t i = 1; i < fit.pairs.size(); ++i)
    if (!(fit.pairs[i].t_life > fit.pairs[i - 1].t_life)) fit.monotone = false;
  return fit;
}

}  // namespace critwave
