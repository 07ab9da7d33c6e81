#include "critwave/grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace critwave {

Grid Grid::make(int n, int points_per_dim, double half_width) {
  if (n < 1 || n > 3)
    throw std::invalid_argument("Grid: dimension must be 1, 2 or 3");
  const int N = points_per_dim;
  if (N < 8 || (N & (N - 1)) != 0)
    throw std::invalid_argument("Grid: points per dimension must be a power of two >= 8");
  if (!(half_width > 0) || !std::isfinite(half_width))
    throw std::invalid_argument("Grid: half width must be positive and finite");

  Grid g;
  g.n_ = n;
  g.N_ = N;
  g.L_ = half_width;
  g.k_.resize(static_cast<std::size_t>(N));
  const double dk = std::numbers::pi / half_width;
  for (int j = 0; j < N; ++j) {
    const int js = j < N / 2 ? j : j - N;
    g.k_[static_cast<std::size_t>(j)] = dk * js;
  }
  return g;
}

std::size_t Grid::size() const {
  std::size_t s = 1;
  for (int d = 0; d < n_; ++d) s *= static_cast<std::size_t>(N_);
  return s;
}

}  // namespace critwave
