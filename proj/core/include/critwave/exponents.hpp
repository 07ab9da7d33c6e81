#pragma once

#include <string>
#include <vector>

namespace critwave {

enum class SettingKind { Euclidean, Heisenberg };

// Ambient setting of the problem: Euclidean R^n or the Heisenberg group H^n.
// Every exponent formula depends only on the scaling dimension dim_h():
// n itself in the Euclidean case, the homogeneous dimension Q = 2n+2 in the
// Heisenberg case.
struct Setting {
  SettingKind kind = SettingKind::Euclidean;
  int n = 1;

  static Setting euclidean(int n);
  static Setting heisenberg(int n);

  int dim_h() const { return kind == SettingKind::Euclidean ? n : 2 * n + 2; }

  bool operator==(const Setting&) const = default;
};

// Critical power p = 1 + 4/(dim_h + 2*gamma). Throws std::domain_error for
// non-positive gamma.
double critical_exponent(const Setting& setting, double gamma);

// Positive root of 2*g^2 + dim_h*g - 2*dim_h = 0, i.e.
// (sqrt(dim_h^2 + 16*dim_h) - dim_h)/4. Meaningful as an admissibility bound
// for Euclidean n >= 3 and for every Heisenberg setting.
double gamma_tilde(const Setting& setting);

// Dual Lebesgue index m with 1/m = 1/2 + gamma/n. Requires 0 < gamma < n/2.
// The identity 1 + 4/(n + 2*gamma) = 1 + 2*m/n is re-checked internally.
double lebesgue_index(int n, double gamma);

struct DecayRates {
  double l2;    // exponent of (1+t)^{-.} for the L2 norm, gamma/2
  double grad;  // exponent for the gradient norm, (gamma+1)/2
};
DecayRates expected_decay_rates(double gamma);

struct ConstraintViolation {
  std::string name;  // e.g. "gamma < gamma_tilde"
  double value;      // the number that failed
  double bound;      // the bound it was checked against
};

// "The theorems say nothing here" is reported separately from "a stated
// constraint failed": dimensions beyond the theorems' reach must not be
// extrapolated into an inadmissibility claim.
enum class TheoremScope { InScope, OutsideScope };

struct AdmissibilityVerdict {
  bool admissible = false;
  TheoremScope scope = TheoremScope::InScope;
  std::vector<ConstraintViolation> violated;
};

// Encodes the admissibility windows exactly as stated, endpoints included:
//   Euclidean n=1,2: gamma in (0, n/2)
//   Euclidean n=3,4: gamma in (0, gamma_tilde)
//   Euclidean n=5,6: gamma in (n/2 - 2, gamma_tilde)
//   Euclidean n>=7:  outside scope
//   Heisenberg n=1:  gamma in (0, gamma_tilde)
//   Heisenberg n=2:  gamma in [1, gamma_tilde)
//   Heisenberg n>=3: outside scope
AdmissibilityVerdict check_admissibility(const Setting& setting, double gamma);

// Analytic parameter bundle for one problem instance, constructed at the
// critical power. gamma_tilde is NaN for Euclidean n <= 2 where the theorem
// does not use it; m is NaN when gamma >= dim_h/2.
struct ProblemParams {
  Setting setting;
  double gamma = 0;
  double p = 0;
  double m = 0;
  double gamma_tilde = 0;
  AdmissibilityVerdict verdict;

  static ProblemParams critical(const Setting& setting, double gamma);
};

}  // namespace critwave
