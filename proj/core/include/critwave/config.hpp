#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "critwave/analysis.hpp"
#include "critwave/evolve.hpp"
#include "critwave/exponents.hpp"
#include "critwave/initdata.hpp"

namespace critwave {

enum class ExperimentKind { Params, Simulate, DecayFit, Lifespan, Oracle, Picard };

struct GridSpec {
  int points = 512;
  double half_width = 64.0;
  bool operator==(const GridSpec&) const = default;
};

struct FitSpec {
  NormColumn column = NormColumn::L2;
  std::optional<double> t_lo;  // default: horizon/10 (or last sample/10)
  std::optional<double> t_hi;  // default: horizon
  bool operator==(const FitSpec&) const = default;
};

struct OracleCaseSpec {
  int n = 1;
  double gamma = 0.25;
  int j = 0;
  bool operator==(const OracleCaseSpec&) const = default;
};

struct OracleSpec {
  std::vector<OracleCaseSpec> cases;
  double t_lo = 1.0;
  double t_hi = 1e4;
  int t_points = 40;
  bool operator==(const OracleSpec&) const = default;
};

// One experiment definition. Serializes to/from JSON with round-trip
// identity; the FNV-1a hash of the canonical serialization names the run
// directory, so identical configs land in identical directories.
struct RunConfig {
  ExperimentKind experiment = ExperimentKind::Simulate;
  Setting setting = Setting{SettingKind::Euclidean, 1};
  double gamma = 0.25;

  Nonlinearity::Kind nonlinearity = Nonlinearity::Kind::Zero;
  std::optional<double> power;  // nonlinearity power; null = critical exponent

  GridSpec grid;
  DataSpec data;
  // When set (PowerLawProfile only), data.sigma is replaced by
  // sharp_rate_sigma(n, gamma, margin) at synthesis time.
  std::optional<double> sharp_rate_margin;

  StepController controller;
  double horizon = 100.0;
  SampleSpec sampling;
  bool override_admissibility = false;
  bool expect_global = false;

  FitSpec fit;        // decay-fit
  std::string input;  // decay-fit: path to a trajectory CSV

  std::vector<double> ladder;  // lifespan: eps values, strictly decreasing

  OracleSpec oracle;

  int picard_iterations = 4;

  static RunConfig from_json_text(std::string_view text);
  std::string to_json_text() const;
  std::string hash() const;  // 16 hex chars (FNV-1a 64 of the serialization)

  // Derived objects.
  ProblemParams problem() const { return ProblemParams::critical(setting, gamma); }
  Nonlinearity make_nonlinearity(const ProblemParams& params) const;
  DataSpec resolved_data() const;
  Grid make_grid() const;

  bool operator==(const RunConfig&) const = default;
};

std::string to_string(ExperimentKind kind);

}  // namespace critwave
