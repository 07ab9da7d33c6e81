#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "critwave/exponents.hpp"
#include "critwave/initdata.hpp"
#include "critwave/norms.hpp"
#include "critwave/spectral.hpp"

namespace critwave {

// Right-hand side f(u) of u_tt - Lap u + u_t = f(u). Both power kinds
// satisfy f(0) = 0 and |f(u)-f(v)| <= C |u-v| (|u|^{p-1} + |v|^{p-1}).
struct Nonlinearity {
  enum class Kind { Zero, AbsPower, SignedPower };
  Kind kind = Kind::Zero;
  double p = 2.0;

  static Nonlinearity zero() { return {}; }
  static Nonlinearity abs_power(double p);
  static Nonlinearity signed_power(double p);

  bool is_zero() const { return kind == Kind::Zero; }
  double operator()(double u) const;

  bool operator==(const Nonlinearity&) const = default;
};

struct StepController {
  double dt_init = 1e-3;
  double dt_min = 1e-9;
  double rel_tol = 1e-6;            // step-doubling relative error target
  double blowup_threshold = 1e6;    // L-infinity trigger

  void validate() const;  // dt_min < dt_init, rel_tol in (1e-12, 1e-2)

  bool operator==(const StepController&) const = default;
};

struct TrajectorySample {
  double t;
  double l2;
  double h1dot;
  double linf;
  double hneg;
};

struct Trajectory {
  enum class Status { ReachedHorizon, BlowUp };

  std::vector<TrajectorySample> samples;
  Status status = Status::ReachedHorizon;
  double horizon = 0;        // requested horizon
  double t_life = 0;         // BlowUp: upper end of the bisection bracket
  double bracket_width = 0;  // BlowUp: width of that bracket (<= dt_min)
  // Dealiasing guard: an accepted (non-blow-up) run whose top-third modal
  // energy fraction ever exceeded 1e-6 is flagged under-resolved.
  bool under_resolved = false;
  double max_tail_fraction = 0;
  std::string config_hash;
};

// Geometric output sampling t_j = t0 * ratio^j (plus t = 0 and the horizon),
// so log-log decay fits are well conditioned.
struct SampleSpec {
  double t0 = 0.1;
  double ratio = 1.1;

  bool operator==(const SampleSpec&) const = default;
};

// One Strang step: half linear flow (exact propagator), nonlinear kick
// v_hat += dt * F[f(u)] evaluated on a 2x zero-padded grid and projected
// back, half linear flow. Exact when f is Zero; second order otherwise.
EvolutionState step(const EvolutionState& state, double dt, const Nonlinearity& f);

// Thrown when the error controller needs dt < dt_min while no blow-up
// indicator has fired; a diagnostic failure, distinct from blow-up.
struct ControllerExhaustion : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SimulateOptions {
  SampleSpec sampling;
  bool override_admissibility = false;
};

// Adaptive (step-doubling) integration to the horizon with blow-up
// detection. On an L-infinity threshold crossing or a non-finite value the
// crossing time is bracketed by bisection in dt to width <= dt_min and the
// trajectory is returned with status BlowUp. Throws std::invalid_argument
// when (setting, gamma) is inadmissible and no override is given.
Trajectory simulate(const ProblemParams& params, const Nonlinearity& f,
                    const DataSpec& data, const Grid& grid,
                    const StepController& controller, double horizon,
                    const SimulateOptions& options = {});

struct PicardIterate {
  int k = 0;                        // 0 is the free linear evolution
  std::vector<DecaySample> series;  // (t, L2, H1dot) of u^(k)
  double x_norm = 0;
  // X-norm of u^(k+1) - u^(k); NaN for the final iterate (no successor).
  double delta = 0;
};

struct PicardResult {
  std::vector<PicardIterate> iterates;     // size K+1
  std::vector<double> deltas;              // size K
  std::vector<double> contraction_ratios;  // size K-1, delta_{k+1}/delta_k
};

// Explicit Picard iteration of the fixed-point map u -> u_lin + N u, with
// the Duhamel integral N u(t) = int_0^t K1(t-tau) * f(u(tau)) dtau computed
// by trapezoidal quadrature over snapshot stacks; the kernel K1 is applied
// spectrally with the exact propagator, so the only quadrature error is in
// tau. Snapshot times follow `snapshots`. Requires iterations >= 3.
PicardResult picard_iterate(const SpectralField& u0, const SpectralField& u1,
                            const Nonlinearity& f, double gamma, double horizon,
                            int iterations, const SampleSpec& snapshots = {});

// Shared helper: {0, t0 r^j ...,  horizon}.
std::vector<double> sample_times(const SampleSpec& spec, double horizon);

}  // namespace critwave
