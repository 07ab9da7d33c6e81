#include "critwave/norms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace critwave {

namespace {

double quadrature_weight(const Grid& g) {
  return std::pow(g.dx(), g.dim());
}

template <class Weight2>
double modal_weighted_l2(const SpectralField& f, Weight2&& weight2,
                         bool skip_zero_mode) {
  double sum = 0;
  for_each_mode(f.grid, [&](std::size_t i, double k2) {
    if (skip_zero_mode && k2 == 0.0) return;
    sum += weight2(k2) * std::norm(f.modes[i]);
  });
  return std::sqrt(quadrature_weight(f.grid) * sum);
}

void check_finite(std::span<const double> samples) {
  for (double s : samples)
    if (!std::isfinite(s)) throw std::domain_error("norm: non-finite sample");
}

}  // namespace

NormKind NormKind::lq(double q) {
  if (!(q >= 1.0)) throw std::invalid_argument("NormKind: Lq needs q >= 1");
  NormKind k{Tag::Lq};
  k.q = q;
  return k;
}

NormKind NormKind::hneg(double gamma) {
  if (!(gamma > 0)) throw std::invalid_argument("NormKind: Hneg needs gamma > 0");
  NormKind k{Tag::Hneg};
  k.gamma = gamma;
  return k;
}

NormKind NormKind::data_norm(double gamma) {
  if (!(gamma > 0)) throw std::invalid_argument("NormKind: DataNorm needs gamma > 0");
  NormKind k{Tag::DataNorm};
  k.gamma = gamma;
  return k;
}

double norm(const Grid& g, std::span<const double> samples, const NormKind& kind) {
  if (samples.size() != g.size())
    throw std::invalid_argument("norm: sample count does not match grid");
  check_finite(samples);
  const double w = quadrature_weight(g);
  switch (kind.tag) {
    case NormKind::Tag::L2: {
      double sum = 0;
      for (double s : samples) sum += s * s;
      return std::sqrt(w * sum);
    }
    case NormKind::Tag::Lq: {
      if (std::isinf(kind.q)) break;  // fall through to Linf below
      double sum = 0;
      for (double s : samples) sum += std::pow(std::abs(s), kind.q);
      return std::pow(w * sum, 1.0 / kind.q);
    }
    case NormKind::Tag::Linf:
      break;
    default:
      throw std::invalid_argument("norm(samples): only L2, Lq and Linf are physical-side kinds");
  }
  double mx = 0;
  for (double s : samples) mx = std::max(mx, std::abs(s));
  return mx;
}

double norm(const SpectralField& f, const NormKind& kind) {
  if (f.modes.size() != f.grid.size())
    throw std::invalid_argument("norm: mode count does not match grid");
  switch (kind.tag) {
    case NormKind::Tag::L2:
      return modal_weighted_l2(f, [](double) { return 1.0; }, false);
    case NormKind::Tag::H1dot:
      return modal_weighted_l2(f, [](double k2) { return k2; }, false);
    case NormKind::Tag::Hneg: {
      const double g = kind.gamma;
      return modal_weighted_l2(
          f, [g](double k2) { return std::pow(k2, -g); }, true);
    }
    case NormKind::Tag::Lq:
    case NormKind::Tag::Linf: {
      const auto samples = transform_inverse_real(f);
      return norm(f.grid, samples, kind);
    }
    case NormKind::Tag::DataNorm:
      throw std::invalid_argument(
          "norm: DataNorm is a functional of the data pair; use data_norm(u0, u1, gamma)");
  }
  throw std::logic_error("norm: unreachable");
}

double sobolev_mixed_norm(const SpectralField& f, double s, double gamma) {
  if (!(gamma > 0)) throw std::invalid_argument("sobolev_mixed_norm: gamma > 0 required");
  return modal_weighted_l2(
      f,
      [s, gamma](double k2) {
        const double japanese = std::pow(1.0 + k2, 0.5 * s);  // <k>^s
        const double low = k2 == 0.0 ? 0.0 : std::pow(k2, -0.5 * gamma);
        const double mult = japanese + low;
        return mult * mult;
      },
      false);
}

double data_norm(const SpectralField& u0, const SpectralField& u1, double gamma) {
  if (!(u0.grid == u1.grid))
    throw std::invalid_argument("data_norm: fields on different grids");
  return sobolev_mixed_norm(u0, 1.0, gamma) + sobolev_mixed_norm(u1, 0.0, gamma);
}

XNormResult x_norm(std::span<const DecaySample> series, double gamma) {
  if (series.empty()) throw std::invalid_argument("x_norm: empty trajectory");
  if (series.front().t != 0.0)
    throw std::invalid_argument("x_norm: series must start at t = 0");
  double best = -1.0, at = 0.0, prev_t = -1.0;
  for (const auto& s : series) {
    if (!(s.t > prev_t)) throw std::invalid_argument("x_norm: times must be strictly increasing");
    prev_t = s.t;
    const double w = std::pow(1.0 + s.t, 0.5 * gamma);
    const double val = w * (s.l2 + std::sqrt(1.0 + s.t) * s.h1dot);
    if (val > best) {
      best = val;
      at = s.t;
    }
  }
  return XNormResult{best, at};
}

double gn_ratio(const SpectralField& f, double q) {
  const int n = f.grid.dim();
  const bool q_ok = (n == 1 && q >= 2.0) ||
                    (n == 2 && q >= 2.0 && !std::isinf(q)) ||
                    (n == 3 && q >= 2.0 && q <= 2.0 * n / (n - 2.0));
  if (!q_ok) throw std::domain_error("gn_ratio: q outside the admissible range");

  const double lq = norm(f, std::isinf(q) ? NormKind::linf() : NormKind::lq(q));
  const double l2 = norm(f, NormKind::l2());
  const double h1 = norm(f, NormKind::h1dot());
  if (!(l2 > 0) || !(h1 > 0))
    throw std::domain_error("gn_ratio: zero denominator");
  const double theta = n * (0.5 - (std::isinf(q) ? 0.0 : 1.0 / q));
  return lq / (std::pow(l2, 1.0 - theta) * std::pow(h1, theta));
}

}  // namespace critwave
