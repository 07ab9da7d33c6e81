#include "critwave/initdata.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "critwave/norms.hpp"

namespace critwave {

namespace {

// Visits physical points as f(flat_index, |x|^2, |x|_inf).
template <class F>
void for_each_point(const Grid& g, F&& f) {
  const int N = g.points_per_dim();
  const int n = g.dim();
  const int n0 = N, n1 = n >= 2 ? N : 1, n2 = n >= 3 ? N : 1;
  std::size_t flat = 0;
  for (int i0 = 0; i0 < n0; ++i0) {
    const double x0 = g.coordinate(i0);
    for (int i1 = 0; i1 < n1; ++i1) {
      const double x1 = n >= 2 ? g.coordinate(i1) : 0.0;
      for (int i2 = 0; i2 < n2; ++i2, ++flat) {
        const double x2 = n >= 3 ? g.coordinate(i2) : 0.0;
        const double r2 = x0 * x0 + x1 * x1 + x2 * x2;
        const double rinf = std::max({std::abs(x0), std::abs(x1), std::abs(x2)});
        f(flat, r2, rinf);
      }
    }
  }
}

double gaussian_outside_fraction(const Grid& g, double width, double center) {
  // Per-dimension L1 mass of e^{-(x-c)^2/(2w^2)} outside [-L, L], as a
  // fraction of the full-line mass; combined across dimensions.
  const double L = g.half_width();
  const double s = std::numbers::sqrt2 * width;
  const double out1d =
      0.5 * (std::erfc((L - center) / s) + std::erfc((L + center) / s));
  double inside = 1.0;
  for (int d = 0; d < g.dim(); ++d) inside *= (1.0 - out1d);
  return 1.0 - inside;
}

// Radius of the box holding 99% of the L2 mass of the field's oscillatory
// band |k| >= 1/2. Below the double root the dynamics are overdamped and
// diffusive, so only this band travels at speed 1 and threatens wrap-around;
// slowly decaying low-frequency content is spatially global on the torus by
// nature and is not a re-entry hazard.
double propagating_support_radius(const Grid& g, const SpectralField& f) {
  SpectralField high = f;
  // smooth high-pass 1 - exp(-(k^2/0.25)^2): a sharp cutoff would ring with
  // 1/|x| tails and defeat the purpose of a support measurement
  for_each_mode(g, [&](std::size_t i, double k2) {
    const double r = k2 / 0.25;
    high.modes[i] *= -std::expm1(-r * r);
  });
  const auto samples = transform_inverse_real(high);
  std::vector<std::pair<double, double>> mass;  // (|x|_inf, |u|^2)
  mass.reserve(samples.size());
  double total = 0;
  for_each_point(g, [&](std::size_t i, double, double rinf) {
    const double m = samples[i] * samples[i];
    mass.emplace_back(rinf, m);
    total += m;
  });
  if (total <= 0) return 0.0;
  std::sort(mass.begin(), mass.end());
  double acc = 0;
  for (const auto& [r, m] : mass) {
    acc += m;
    if (acc >= 0.99 * total) return r;
  }
  return g.half_width();
}


}  // namespace

double sharp_rate_sigma(int n, double gamma, double margin) {
  if (!(gamma > 0) || !(gamma < 0.5 * n))
    throw std::domain_error("sharp_rate_sigma: need 0 < gamma < n/2");
  if (!(margin > 0))
    throw std::invalid_argument("sharp_rate_sigma: margin must be positive");
  return gamma - 0.5 * n + margin;
}

InitialData synthesize(const DataSpec& spec, const Grid& grid, double gamma) {
  if (!(gamma > 0)) throw std::invalid_argument("synthesize: gamma must be positive");
  const int n = grid.dim();

  SpectralField profile = SpectralField::zero(grid);
  bool truncated = false;
  double support = 0;

  switch (spec.kind) {
    case ProfileKind::GaussianBump: {
      if (!(spec.width > 0))
        throw std::invalid_argument("synthesize: GaussianBump width must be positive");
      const double outside = gaussian_outside_fraction(grid, spec.width, spec.center);
      if (outside > 1e-8)
        throw std::invalid_argument(
            "synthesize: GaussianBump truncation budget exceeded (grid too small)");
      std::vector<double> samples(grid.size());
      const double c = spec.center;
      const double inv2w2 = 1.0 / (2.0 * spec.width * spec.width);
      {
        const int N = grid.points_per_dim();
        const int n1 = n >= 2 ? N : 1, n2 = n >= 3 ? N : 1;
        std::size_t flat = 0;
        for (int i0 = 0; i0 < N; ++i0) {
          const double d0 = grid.coordinate(i0) - c;
          for (int i1 = 0; i1 < n1; ++i1) {
            const double d1 = n >= 2 ? grid.coordinate(i1) - c : 0.0;
            for (int i2 = 0; i2 < n2; ++i2, ++flat) {
              const double d2 = n >= 3 ? grid.coordinate(i2) - c : 0.0;
              samples[flat] = std::exp(-(d0 * d0 + d1 * d1 + d2 * d2) * inv2w2);
            }
          }
        }
      }
      profile = transform_forward(grid, std::span<const double>(samples));
      support = propagating_support_radius(grid, profile);
      break;
    }
    case ProfileKind::PowerLawProfile: {
      if (!(spec.sigma > gamma - 0.5 * n))
        throw std::invalid_argument(
            "synthesize: PowerLawProfile needs sigma > gamma - n/2 to lie in Hneg(gamma)");
      const double cal = std::pow(grid.dk() / grid.dx(), 0.5 * n);
      // The (-1)^(i0+i1+i2) phase is a half-period shift: it centers the
      // profile at x = 0 instead of the DFT origin x = -L.
      {
        const int N = grid.points_per_dim();
        const int n1 = n >= 2 ? N : 1, n2 = n >= 3 ? N : 1;
        std::size_t flat = 0;
        for (int i0 = 0; i0 < N; ++i0) {
          const double k0 = grid.wavenumber(i0);
          for (int i1 = 0; i1 < n1; ++i1) {
            const double k1 = n >= 2 ? grid.wavenumber(i1) : 0.0;
            for (int i2 = 0; i2 < n2; ++i2, ++flat) {
              const double k2c = n >= 3 ? grid.wavenumber(i2) : 0.0;
              const double k2 = k0 * k0 + k1 * k1 + k2c * k2c;
              const double phase = ((i0 + i1 + i2) % 2 == 0) ? 1.0 : -1.0;
              if (k2 == 0.0) {
                profile.modes[flat] = spec.sigma == 0.0 ? cal : 0.0;
                continue;
              }
              profile.modes[flat] =
                  phase * cal * std::pow(k2, 0.5 * spec.sigma) * std::exp(-k2);
            }
          }
        }
      }
      support = propagating_support_radius(grid, profile);
      break;
    }
    case ProfileKind::SlowDecayPositive: {
      if (!(spec.mu > 0))
        throw std::invalid_argument("synthesize: SlowDecayPositive mu must be positive");
      std::vector<double> samples(grid.size());
      for_each_point(grid, [&](std::size_t i, double r2, double) {
        samples[i] = std::pow(1.0 + r2, -0.5 * spec.mu);
      });
      // Not required to fit: algebraic tails are the point of this profile.
      // Flag instead of throwing when the L1 tail beyond the box is not
      // negligible (always the case for mu <= n).
      if (spec.mu <= n) {
        truncated = true;
      } else {
        double grid_mass = 0;
        for (double s : samples) grid_mass += s;
        grid_mass *= std::pow(grid.dx(), n);
        const double L = grid.half_width();
        const double surface = n == 1 ? 2.0 : (n == 2 ? 2.0 * std::numbers::pi : 4.0 * std::numbers::pi);
        const double outside = surface * std::pow(L, n - spec.mu) / (spec.mu - n);
        truncated = outside > 1e-8 * (grid_mass + outside);
      }
      profile = transform_forward(grid, std::span<const double>(samples));
      support = grid.half_width();
      break;
    }
  }

  // Scale: either to the requested composite data size or by raw amplitude.
  // The unit-profile norm is computed once so that doubling target_eps
  // doubles every mode exactly.
  InitialData out;
  SpectralField zero = SpectralField::zero(grid);
  const SpectralField& u0_unit = spec.placement == DataPlacement::OnU0 ? profile : zero;
  const SpectralField& u1_unit = spec.placement == DataPlacement::OnU1 ? profile : zero;

  double scale = spec.amplitude;
  if (spec.target_eps) {
    const double unit = data_norm(u0_unit, u1_unit, gamma);
    if (!(unit > 0)) throw std::invalid_argument("synthesize: zero profile cannot hit target_eps");
    scale = *spec.target_eps / unit;
  }

  out.u0 = u0_unit;
  out.u1 = u1_unit;
  for (auto& m : out.u0.modes) m *= scale;
  for (auto& m : out.u1.modes) m *= scale;
  out.truncated = truncated;
  out.support_radius = support;
  return out;
}

}  // namespace critwave
