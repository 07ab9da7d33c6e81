#pragma once

#include <optional>

#include "critwave/spectral.hpp"

namespace critwave {

enum class ProfileKind {
  // u(x) = exp(-|x - c|^2 / (2 w^2)); in H1 and in Hneg(g) for every g < n/2.
  GaussianBump,
  // Defined directly in frequency space: u_hat(xi) = |xi|^sigma e^{-|xi|^2}.
  // In Hneg(g) iff 2(g - sigma) < n; the k = 0 mode is set to zero for
  // sigma < 0, consistent with the Hneg seminorm's zero-mode exclusion.
  PowerLawProfile,
  // u(x) = (1 + |x|^2)^{-mu/2} > 0 everywhere; the slowly decaying positive
  // data of the blow-up experiments. Exempt from the truncation budget and
  // flagged truncated instead when the tail is not negligible.
  SlowDecayPositive,
};

enum class DataPlacement {
  OnU1,  // u1 carries the profile, u0 = 0 (default, the nonexistence setup)
  OnU0,  // u0 carries the profile, u1 = 0
};

struct DataSpec {
  ProfileKind kind = ProfileKind::GaussianBump;
  double width = 1.0;   // GaussianBump
  double center = 0.0;  // GaussianBump (same offset in every dimension)
  double sigma = 0.0;   // PowerLawProfile low-frequency exponent
  double mu = 1.0;      // SlowDecayPositive decay exponent
  double amplitude = 1.0;
  // When set, both fields are rescaled so that data_norm(u0, u1, gamma)
  // equals target_eps (amplitude is then ignored).
  std::optional<double> target_eps;
  DataPlacement placement = DataPlacement::OnU1;

  bool operator==(const DataSpec&) const = default;
};

struct InitialData {
  SpectralField u0;
  SpectralField u1;
  // SlowDecayPositive whose tail mass exceeded the truncation budget.
  bool truncated = false;
  // Radius containing 99% of the L2 mass of the carrying field's
  // oscillatory band |k| >= 1/2 (the part that propagates at speed 1);
  // feeds the wrap-around check. SlowDecayPositive reports the full
  // half-width.
  double support_radius = 0;
};

// Builds the data pair on the grid. Throws on: PowerLawProfile with
// sigma <= gamma - n/2 (not in Hneg(gamma)); GaussianBump whose L1 mass
// outside the domain exceeds 1e-8 of the total.
InitialData synthesize(const DataSpec& spec, const Grid& grid, double gamma);

// sigma = gamma - n/2 + margin: the free evolution of PowerLawProfile(sigma)
// has L2 decay exponent (n + 2*sigma)/4 = gamma/2 + margin/2, just inside
// the decay bound. Requires 0 < gamma < n/2 and margin > 0.
double sharp_rate_sigma(int n, double gamma, double margin = 0.01);

}  // namespace critwave
