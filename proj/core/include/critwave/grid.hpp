#pragma once

#include <cstddef>
#include <vector>

namespace critwave {

// Uniform periodic grid on [-L, L)^n with N points per dimension, N a power
// of two. Wavenumbers follow the FFT storage order: storage index j in [0,N)
// carries the signed frequency index js = (j < N/2 ? j : j - N), and
// k_j = pi * js / L, so the modal lattice per dimension is
// {-N/2, ..., N/2 - 1} * (pi/L). All physical-side quadratures use the
// weight dx^n with dx = 2L/N; the modal spacing is dk = pi/L.
class Grid {
 public:
  Grid() = default;

  // Throws std::invalid_argument unless n in {1,2,3}, N a power of two >= 8,
  // L > 0.
  static Grid make(int n, int points_per_dim, double half_width);

  int dim() const { return n_; }
  int points_per_dim() const { return N_; }
  double half_width() const { return L_; }
  double dx() const { return 2.0 * L_ / N_; }
  double dk() const { return k_[1]; }
  double k_max() const { return dk() * (N_ / 2); }
  std::size_t size() const;  // N^n

  double coordinate(int index) const { return -L_ + index * dx(); }
  double wavenumber(int index) const { return k_[static_cast<std::size_t>(index)]; }
  const std::vector<double>& wavenumbers() const { return k_; }

  bool operator==(const Grid& other) const {
    return n_ == other.n_ && N_ == other.N_ && L_ == other.L_;
  }

 private:
  int n_ = 0;
  int N_ = 0;
  double L_ = 0;
  std::vector<double> k_;  // per-dimension wavenumber table, FFT order
};

// Visits every mode as f(flat_index, k_squared). Flat indices are row-major
// over the dimensions, matching SpectralField storage.
template <class F>
void for_each_mode(const Grid& g, F&& f) {
  const int N = g.points_per_dim();
  const auto& k = g.wavenumbers();
  const int n = g.dim();
  const int n0 = n >= 1 ? N : 1;
  const int n1 = n >= 2 ? N : 1;
  const int n2 = n >= 3 ? N : 1;
  std::size_t flat = 0;
  for (int i0 = 0; i0 < n0; ++i0) {
    const double k0 = n >= 1 ? k[i0] * k[i0] : 0.0;
    for (int i1 = 0; i1 < n1; ++i1) {
      const double k01 = k0 + (n >= 2 ? k[i1] * k[i1] : 0.0);
      for (int i2 = 0; i2 < n2; ++i2, ++flat) {
        f(flat, k01 + (n >= 3 ? k[i2] * k[i2] : 0.0));
      }
    }
  }
}

}  // namespace critwave
