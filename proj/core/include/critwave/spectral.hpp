#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "critwave/grid.hpp"

namespace critwave {

// Modal coefficients of a grid function. The transform pair is unitary:
//   modes[j] = N^{-n/2} sum_x u(x) e^{-i k_j.x}
//   u(x)     = N^{-n/2} sum_j modes[j] e^{+i k_j.x}
// so one quadrature weight serves both sides of the discrete Parseval
// identity:
//   ||u||^2_{L2,grid} = dx^n sum_x |u(x)|^2 = dx^n sum_j |modes[j]|^2.
// Every weighted modal norm below uses the same dx^n weight; with this
// convention the modal sums approximate the corresponding continuum
// frequency integrals with no further constants. The continuum Fourier
// transform (2pi)^{-n/2} int u e^{-i xi.x} dx evaluated at xi = k_j is
// approximated by (dx/dk)^{n/2} * modes[j].
//
// A field representing a real-valued function satisfies the conjugate
// symmetry modes(-k) = conj(modes(k)).
struct SpectralField {
  Grid grid;
  std::vector<std::complex<double>> modes;

  static SpectralField zero(const Grid& g) {
    return SpectralField{g, std::vector<std::complex<double>>(g.size())};
  }
  bool finite() const;
};

// Forward/inverse DFT in the convention above. Shape mismatches throw.
SpectralField transform_forward(const Grid& g, std::span<const double> samples);
SpectralField transform_forward(const Grid& g,
                                std::span<const std::complex<double>> samples);
std::vector<std::complex<double>> transform_inverse(const SpectralField& f);
// Drops the imaginary part; intended for fields with conjugate symmetry,
// where it is pure rounding noise.
std::vector<double> transform_inverse_real(const SpectralField& f);

// Exact solution matrix of the mode ODE  w'' + w' + k^2 w = 0:
//   (w, w')(t) = [[A, B], [A_t, B_t]] (w, w')(0),
// with characteristic roots (-1 +- sqrt(1-4k^2))/2. All four entries are
// real for every k^2 >= 0. The evaluation switches between hyperbolic
// (k^2 < 1/4) and trigonometric (k^2 > 1/4) forms and uses a truncated
// power series in (delta*t)^2 near the double root |k| = 1/2, where the
// direct formulas cancel catastrophically.
struct PropagatorEntries {
  double a;    // A(t, k^2)
  double b;    // B(t, k^2)
  double a_t;  // dA/dt = -k^2 B
  double b_t;  // dB/dt
};
PropagatorEntries propagator_entries(double t, double k2);

// Pair (u_hat, v_hat) of the solution and its time derivative at one time.
struct EvolutionState {
  SpectralField u_hat;
  SpectralField v_hat;
  double time = 0;
};

// Advances the free flow of u_tt - Lap u + u_t = 0 by dt, exactly per mode.
EvolutionState apply_linear_flow(const EvolutionState& state, double dt);

enum class ZeroModePolicy {
  Apply,  // multiply the k = 0 mode by symbol(0)
  Skip,   // leave the k = 0 mode untouched
};

// Pointwise Fourier multiplier field -> symbol(|k|) * field. Throws if the
// symbol is non-finite at any mode it is applied to.
SpectralField apply_multiplier(const SpectralField& f,
                               const std::function<double(double)>& symbol,
                               ZeroModePolicy policy);

// Torus-as-proxy rule of thumb: re-entrant wave fronts stay negligible over
// the horizon when L >= data support radius + horizon + pad.
inline bool wraparound_ok(const Grid& g, double support_radius, double horizon,
                          double pad = 10.0) {
  return g.half_width() >= support_radius + horizon + pad;
}

}  // namespace critwave
