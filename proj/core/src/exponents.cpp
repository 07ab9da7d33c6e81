#include "critwave/exponents.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace critwave {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void require(std::vector<ConstraintViolation>& out, bool ok, std::string name,
             double value, double bound) {
  if (!ok) out.push_back({std::move(name), value, bound});
}

}  // namespace

Setting Setting::euclidean(int n) {
  if (n < 1) throw std::invalid_argument("Setting: spatial dimension must be >= 1");
  return Setting{SettingKind::Euclidean, n};
}

Setting Setting::heisenberg(int n) {
  if (n < 1) throw std::invalid_argument("Setting: Heisenberg index must be >= 1");
  return Setting{SettingKind::Heisenberg, n};
}

double critical_exponent(const Setting& setting, double gamma) {
  if (!(gamma > 0))
    throw std::domain_error("critical_exponent: gamma must be positive");
  return 1.0 + 4.0 / (setting.dim_h() + 2.0 * gamma);
}

double gamma_tilde(const Setting& setting) {
  const double d = setting.dim_h();
  return (std::sqrt(d * d + 16.0 * d) - d) / 4.0;
}

double lebesgue_index(int n, double gamma) {
  if (n < 1) throw std::invalid_argument("lebesgue_index: n must be >= 1");
  if (!(gamma > 0) || !(gamma < 0.5 * n))
    throw std::domain_error("lebesgue_index: need 0 < gamma < n/2");
  const double m = 1.0 / (0.5 + gamma / n);
  // Second-critical-exponent identity, algebraically exact: 2m/n = 4/(n+2g).
  if (std::abs(4.0 / (n + 2.0 * gamma) - 2.0 * m / n) > 1e-12)
    throw std::logic_error("lebesgue_index: identity 1+4/(n+2g) = 1+2m/n violated");
  return m;
}

DecayRates expected_decay_rates(double gamma) {
  return DecayRates{0.5 * gamma, 0.5 * (gamma + 1.0)};
}

AdmissibilityVerdict check_admissibility(const Setting& setting, double gamma) {
  AdmissibilityVerdict v;
  const int n = setting.n;

  if (setting.kind == SettingKind::Euclidean) {
    if (n >= 7) {
      v.scope = TheoremScope::OutsideScope;
      v.violated.push_back({"n <= 6 (Euclidean theorem scope)", double(n), 6.0});
      return v;
    }
    if (n <= 2) {
      require(v.violated, gamma > 0.0, "gamma > 0", gamma, 0.0);
      require(v.violated, gamma < 0.5 * n, "gamma < n/2", gamma, 0.5 * n);
    } else if (n <= 4) {
      const double gt = gamma_tilde(setting);
      require(v.violated, gamma > 0.0, "gamma > 0", gamma, 0.0);
      require(v.violated, gamma < gt, "gamma < gamma_tilde", gamma, gt);
    } else {
      const double gt = gamma_tilde(setting);
      const double lo = 0.5 * n - 2.0;
      require(v.violated, gamma > lo, "gamma > n/2 - 2", gamma, lo);
      require(v.violated, gamma < gt, "gamma < gamma_tilde", gamma, gt);
    }
  } else {
    if (n >= 3) {
      v.scope = TheoremScope::OutsideScope;
      v.violated.push_back({"n <= 2 (Heisenberg theorem scope)", double(n), 2.0});
      return v;
    }
    const double gt = gamma_tilde(setting);
    if (n == 1) {
      require(v.violated, gamma > 0.0, "gamma > 0", gamma, 0.0);
    } else {
      require(v.violated, gamma >= 1.0, "gamma >= 1", gamma, 1.0);
    }
    require(v.violated, gamma < gt, "gamma < gamma_tilde", gamma, gt);
  }

  v.admissible = v.violated.empty();
  return v;
}

ProblemParams ProblemParams::critical(const Setting& setting, double gamma) {
  ProblemParams params;
  params.setting = setting;
  params.gamma = gamma;
  params.p = critical_exponent(setting, gamma);

  const int d = setting.dim_h();
  params.m = (gamma < 0.5 * d) ? lebesgue_index(d, gamma) : kNaN;

  const bool uses_gamma_tilde =
      setting.kind == SettingKind::Heisenberg || setting.n >= 3;
  params.gamma_tilde = uses_gamma_tilde ? critwave::gamma_tilde(setting) : kNaN;

  params.verdict = check_admissibility(setting, gamma);
  return params;
}

}  // namespace critwave
