#pragma once

#include <filesystem>

#include "critwave/config.hpp"
#include "critwave/manifest.hpp"

namespace critwave {

// Process exit contract, shared by the library runner and the CLI.
namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int inadmissible = 1;        // params verdict: in scope, not admissible
inline constexpr int input_error = 2;
inline constexpr int out_of_scope = 3;        // outside the theorems' reach
inline constexpr int numerical_failure = 4;   // controller/quadrature exhaustion
inline constexpr int unexpected_blowup = 5;   // blow-up in a run with expect_global
}  // namespace exit_code

struct RunOutcome {
  int code = exit_code::ok;
  std::filesystem::path run_dir;
  RunManifest manifest;
};

// $CRITWAVE_OUT when set, ./runs otherwise.
std::filesystem::path default_out_root();

// Creates <out_root>/<experiment>-<12-hash>/ (idempotent: identical configs
// share the directory and reproduce identical data bytes), runs the
// experiment, writes its artifacts plus config.json and manifest.json.
// Anticipated failures are mapped onto the exit contract and leave a
// failure manifest rather than throwing.
RunOutcome run_experiment(const RunConfig& cfg, const std::filesystem::path& out_root);

// Emits a gnuplot script plus plain data files for a completed run
// directory (decay/norm plots for trajectory runs, a log-log scatter with
// the fitted line for lifespan runs). Returns a process exit code.
int emit_plot(const std::filesystem::path& run_dir);

}  // namespace critwave
