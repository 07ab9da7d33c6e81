#pragma once

#include <functional>
#include <span>
#include <vector>

#include "critwave/evolve.hpp"

namespace critwave {

enum class NormColumn { L2, H1dot, Linf, Hneg };

struct FitWindow {
  double t_lo;
  double t_hi;
};

struct DecayFit {
  double slope = 0;
  double intercept = 0;
  double stderr_slope = 0;
  FitWindow window{0, 0};
  int n_points = 0;
};

// Least-squares fit of log(norm) against log(1+t) over the window. The
// window must start at t_lo >= 1 (the pre-asymptotic regime is excluded)
// and contain at least 8 strictly positive samples.
DecayFit fit_decay(std::span<const TrajectorySample> samples, NormColumn column,
                   FitWindow window);
DecayFit fit_decay(const Trajectory& traj, NormColumn column, FitWindow window);

// Default fit window for a run with the given horizon.
inline FitWindow default_fit_window(double horizon) {
  return FitWindow{horizon / 10.0, horizon};
}

enum class BoundTrend { Bounded, Growing };

struct BoundCheckResult {
  double sup_l2 = 0;    // sup (1+t)^{g/2} ||u||_{L2}
  double sup_grad = 0;  // sup (1+t)^{(g+1)/2} ||grad u||_{L2}
  BoundTrend trend = BoundTrend::Bounded;
};

// Weighted suprema over the trajectory plus a boundedness heuristic: the
// run is Growing when the weighted running max over the final decade
// [t_end/10, t_end] exceeds the max over the earlier samples by >= 5%.
// Blow-up trajectories are rejected.
BoundCheckResult bound_check(const Trajectory& traj, double gamma);

// The two Duhamel integral estimates of the contraction proof.
//   NearField: int_{t/2}^t (1+t-tau)^{-j/2} (1+tau)^{-1-gamma/2} dtau
//   FarField:  int_0^{t/2} (1+t-tau)^{-a}   (1+tau)^{-b}         dtau
// with (a, b) from the proof branch at the critical power p:
//   m = 1   (p >= 2): a = n/4 + j/2,        b = -(n/4 - 1 - gamma/2),
//                     convergent iff gamma < n/2
//   m = 2/p (p <= 2): a = n(p-1)/4 + j/2,   b = gamma*p/2,
//                     convergent iff gamma*p/2 < 1 (i.e. gamma < gamma_tilde)
// Both sides are claimed to be O((1+t)^{-(gamma+j)/2}).
enum class IntegralKind { NearField, FarField };
enum class ProofBranch { MOne, MTwoOverP };

struct IntegralCase {
  IntegralKind which = IntegralKind::NearField;
  int n = 1;
  int j = 0;
  double gamma = 0;
  double p = 0;                              // nonlinearity power
  ProofBranch branch = ProofBranch::MOne;    // FarField only

  double a() const;
  double b() const;
  double claimed_rate() const { return 0.5 * (gamma + j); }
  // Throws std::domain_error naming the violated convergence condition.
  void validate() const;
};

struct OracleResult {
  double sup_ratio;  // sup_t Integral(t) * (1+t)^{claimed_rate}
  double argmax_t;
};

// Evaluates the integral by adaptive quadrature on every t of the grid and
// returns the supremum of Integral(t)/(1+t)^{-claimed_rate}. A finite, grid-
// stable supremum is the numerical certificate of the inequality; cases
// violating a convergence condition are refused by validate().
//
// Caveat on stability: the ratio approaches its limit like t^{-e} with
// e = 1 - b for the far-field cases (n/4 - gamma/2 on the m = 1 branch,
// 1 - gamma*p/2 on the m = 2/p branch) and e = 1 for the near field. When
// e is small the finite-grid supremum still creeps upward under grid
// extension even though the certified constant is finite.
OracleResult integral_oracle(const IntegralCase& c, std::span<const double> t_grid,
                             double quad_rel_tol = 1e-10);

// Geometric grid with `points` entries from lo to hi inclusive.
std::vector<double> geometric_grid(double lo, double hi, int points);

struct LifespanPoint {
  double eps;
  double t_life;
  double bracket_width;
};

struct LifespanFit {
  std::vector<LifespanPoint> pairs;        // blow-up runs, ladder order
  std::vector<double> reached_horizon;     // eps excluded (empirical eps0 side)
  double slope = 0;                        // d log T_life / d log eps
  double intercept = 0;
  double stderr_slope = 0;
  bool monotone = false;  // T_life strictly increasing as eps decreases
  bool has_fit = false;   // false when fewer than 2 blow-up points
};

// Runs the ladder through `run_at_eps` (strictly decreasing eps, >= 4
// entries), excludes runs that reach the horizon, and fits
// log T_life against log eps.
LifespanFit lifespan_sweep(const std::function<Trajectory(double)>& run_at_eps,
                           std::span<const double> ladder);

}  // namespace critwave
