#include "critwave/spectral.hpp"

#include <cmath>
#include <stdexcept>

#include "fft_engine.hpp"

namespace critwave {

namespace {

std::vector<int> fft_dims(const Grid& g) {
  return std::vector<int>(static_cast<std::size_t>(g.dim()), g.points_per_dim());
}

double unitary_scale(const Grid& g) {
  // N^{-n/2}
  return std::pow(static_cast<double>(g.points_per_dim()), -0.5 * g.dim());
}

}  // namespace

bool SpectralField::finite() const {
  for (const auto& m : modes)
    if (!std::isfinite(m.real()) || !std::isfinite(m.imag())) return false;
  return true;
}

SpectralField transform_forward(const Grid& g,
                                std::span<const std::complex<double>> samples) {
  if (samples.size() != g.size())
    throw std::invalid_argument("transform_forward: sample count does not match grid");
  SpectralField f{g, std::vector<std::complex<double>>(g.size())};
  detail::dft(fft_dims(g), -1, samples.data(), f.modes.data());
  const double s = unitary_scale(g);
  for (auto& m : f.modes) m *= s;
  return f;
}

SpectralField transform_forward(const Grid& g, std::span<const double> samples) {
  if (samples.size() != g.size())
    throw std::invalid_argument("transform_forward: sample count does not match grid");
  std::vector<std::complex<double>> tmp(samples.begin(), samples.end());
  return transform_forward(g, std::span<const std::complex<double>>(tmp));
}

std::vector<std::complex<double>> transform_inverse(const SpectralField& f) {
  if (f.modes.size() != f.grid.size())
    throw std::invalid_argument("transform_inverse: mode count does not match grid");
  std::vector<std::complex<double>> out(f.modes.size());
  detail::dft(fft_dims(f.grid), +1, f.modes.data(), out.data());
  const double s = unitary_scale(f.grid);
  for (auto& x : out) x *= s;
  return out;
}

std::vector<double> transform_inverse_real(const SpectralField& f) {
  auto full = transform_inverse(f);
  std::vector<double> out(full.size());
  for (std::size_t i = 0; i < full.size(); ++i) out[i] = full[i].real();
  return out;
}

PropagatorEntries propagator_entries(double t, double k2) {
  if (!std::isfinite(t) || !std::isfinite(k2))
    throw std::domain_error("propagator_entries: non-finite input");
  if (t < 0 || k2 < 0)
    throw std::domain_error("propagator_entries: t and k2 must be non-negative");

  // delta^2 = (1 - 4k^2)/4. Three regimes:
  //  - |delta^2 t^2| < 1e-8: truncated series in z = (delta t)^2 for both
  //    sinh(delta t)/delta and cosh(delta t); three terms keep the relative
  //    error below 1e-12 while avoiding the cancellation at the double root.
  //  - delta^2 > 0 (k^2 < 1/4): both characteristic roots are <= 0, so
  //    B = e^{lambda_+ t} (1 - e^{-2 delta t}) / (2 delta) evaluates without
  //    overflow or cancellation for arbitrarily large t.
  //  - delta^2 < 0 (k^2 > 1/4): trigonometric form.
  const double d2 = 0.25 * (1.0 - 4.0 * k2);
  const double z = d2 * t * t;

  PropagatorEntries e;
  if (std::abs(z) < 1e-8) {
    const double damp = std::exp(-0.5 * t);
    const double sinch = t * (1.0 + z / 6.0 + z * z / 120.0);  // sinh(dt)/d
    const double cosh_b = 1.0 + z / 2.0 + z * z / 24.0;        // cosh(dt)
    e.b = damp * sinch;
    e.a = damp * (cosh_b + 0.5 * sinch);
    e.b_t = damp * (cosh_b - 0.5 * sinch);
  } else if (d2 > 0) {
    const double d = std::sqrt(d2);
    const double ep = std::exp((-0.5 + d) * t);  // e^{lambda_+ t} <= 1
    const double em = std::exp((-0.5 - d) * t);  // e^{lambda_- t}
    e.b = ep * (-std::expm1(-2.0 * d * t)) / (2.0 * d);
    const double ch = 0.5 * (ep + em);  // e^{-t/2} cosh(delta t)
    e.a = ch + 0.5 * e.b;
    e.b_t = ch - 0.5 * e.b;
  } else {
    const double damp = std::exp(-0.5 * t);
    const double w = std::sqrt(-d2);
    const double sinch = std::sin(w * t) / w;
    const double cosh_b = std::cos(w * t);
    e.b = damp * sinch;
    e.a = damp * (cosh_b + 0.5 * sinch);
    e.b_t = damp * (cosh_b - 0.5 * sinch);
  }
  e.a_t = -k2 * e.b;
  return e;
}

EvolutionState apply_linear_flow(const EvolutionState& state, double dt) {
  if (!(dt >= 0)) throw std::domain_error("apply_linear_flow: dt must be >= 0");
  if (!(state.u_hat.grid == state.v_hat.grid))
    throw std::invalid_argument("apply_linear_flow: fields on different grids");

  EvolutionState out = state;
  auto& u = out.u_hat.modes;
  auto& v = out.v_hat.modes;
  for_each_mode(state.u_hat.grid, [&](std::size_t i, double k2) {
    const PropagatorEntries e = propagator_entries(dt, k2);
    const std::complex<double> ui = u[i], vi = v[i];
    u[i] = e.a * ui + e.b * vi;
    v[i] = e.a_t * ui + e.b_t * vi;
  });
  out.time = state.time + dt;
  return out;
}

SpectralField apply_multiplier(const SpectralField& f,
                               const std::function<double(double)>& symbol,
                               ZeroModePolicy policy) {
  SpectralField out = f;
  for_each_mode(f.grid, [&](std::size_t i, double k2) {
    if (k2 == 0.0 && policy == ZeroModePolicy::Skip) return;
    const double s = symbol(std::sqrt(k2));
    if (!std::isfinite(s))
      throw std::domain_error("apply_multiplier: non-finite symbol value");
    out.modes[i] *= s;
  });
  return out;
}

}  // namespace critwave
