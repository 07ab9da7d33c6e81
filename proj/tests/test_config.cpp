#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "critwave/config.hpp"
#include "critwave/csv.hpp"
#include "critwave/runner.hpp"

using namespace critwave;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("critwave_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

RunConfig tiny_linear_config() {
  RunConfig c;
  c.experiment = ExperimentKind::Simulate;
  c.setting = Setting::euclidean(1);
  c.gamma = 0.25;
  c.nonlinearity = Nonlinearity::Kind::Zero;
  c.grid = {256, 64.0};
  c.data.kind = ProfileKind::GaussianBump;
  c.data.amplitude = 1.0;
  c.horizon = 30.0;
  return c;
}

}  // namespace

TEST_CASE("config JSON round trip identity") {
  RunConfig a = tiny_linear_config();
  a.data.target_eps = 0.01;
  a.sharp_rate_margin = 0.01;
  a.ladder = {0.4, 0.2, 0.1, 0.05};
  a.fit.t_lo = 5.0;
  a.oracle.cases = {{1, 0.25, 0}, {3, 1.2, 1}};
  a.picard_iterations = 5;

  const RunConfig b = RunConfig::from_json_text(a.to_json_text());
  CHECK(b == a);
  CHECK(b.hash() == a.hash());

  SUBCASE("optionals absent stay absent") {
    RunConfig c = tiny_linear_config();
    const RunConfig d = RunConfig::from_json_text(c.to_json_text());
    CHECK(d == c);
    CHECK_FALSE(d.data.target_eps.has_value());
    CHECK_FALSE(d.fit.t_lo.has_value());
  }

  SUBCASE("hash separates distinct configs") {
    RunConfig c = a;
    c.gamma = 0.26;
    CHECK(c.hash() != a.hash());
  }
}

TEST_CASE("config parsing rejects malformed input by name") {
  CHECK_THROWS_AS(RunConfig::from_json_text("{"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(RunConfig::from_json_text(R"({"exxperiment": "simulate"})"),
                       doctest::Contains("unknown key"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(RunConfig::from_json_text(R"({"experiment": "simulte"})"),
                       doctest::Contains("unknown experiment"), std::invalid_argument);
  CHECK_THROWS_AS(RunConfig::from_json_text(R"({"gamma": "large"})"),
                  std::invalid_argument);
}

TEST_CASE("manifest write is atomic-style and loads back") {
  const auto dir = fresh_dir("manifest");
  RunManifest m;
  m.config_hash = "abc123";
  m.status = "ok";
  m.produced_files = {"trajectory.csv"};
  m.headline["slope"] = -0.5;
  m.started_at = m.finished_at = utc_now_iso8601();
  m.write(dir);

  CHECK(fs::exists(dir / "manifest.json"));
  CHECK_FALSE(fs::exists(dir / "manifest.json.tmp"));
  const RunManifest back = RunManifest::load(dir);
  CHECK(back.config_hash == "abc123");
  CHECK(back.headline.at("slope") == doctest::Approx(-0.5));
  CHECK(back.produced_files == m.produced_files);
}

TEST_CASE("runner: simulate produces a complete, reproducible run directory") {
  const auto root = fresh_dir("runner_sim");
  const RunConfig cfg = tiny_linear_config();

  const RunOutcome first = run_experiment(cfg, root);
  REQUIRE(first.code == exit_code::ok);
  CHECK(fs::exists(first.run_dir / "config.json"));
  CHECK(fs::exists(first.run_dir / "trajectory.csv"));
  CHECK(fs::exists(first.run_dir / "manifest.json"));
  for (const auto& f : first.manifest.produced_files)
    CHECK(fs::exists(first.run_dir / f));

  const std::string bytes1 = slurp(first.run_dir / "trajectory.csv");
  const RunOutcome second = run_experiment(cfg, root);
  CHECK(second.run_dir == first.run_dir);  // idempotent naming by hash
  CHECK(slurp(second.run_dir / "trajectory.csv") == bytes1);
  CHECK(second.manifest.config_hash == first.manifest.config_hash);

  SUBCASE("decay-fit from the stored CSV alone reproduces the in-process fit") {
    RunConfig fitcfg = cfg;
    fitcfg.experiment = ExperimentKind::DecayFit;
    fitcfg.input = (first.run_dir / "trajectory.csv").string();
    fitcfg.fit.column = NormColumn::L2;
    const RunOutcome fit_run = run_experiment(fitcfg, root);
    REQUIRE(fit_run.code == exit_code::ok);

    const auto samples = read_trajectory_csv(first.run_dir / "trajectory.csv");
    const DecayFit direct = fit_decay(samples, NormColumn::L2, {3.0, 30.0});
    CHECK(fit_run.manifest.headline.at("slope") == doctest::Approx(direct.slope).epsilon(1e-15));
  }

  SUBCASE("plot emission: one script, two data files") {
    CHECK(emit_plot(first.run_dir) == exit_code::ok);
    CHECK(fs::exists(first.run_dir / "plot.gp"));
    CHECK(fs::exists(first.run_dir / "plot_norms.dat"));
    CHECK(fs::exists(first.run_dir / "plot_guides.dat"));
    CHECK(emit_plot(fresh_dir("empty")) == exit_code::input_error);
  }
}

TEST_CASE("runner: CSV round trip preserves the doubles exactly") {
  const auto root = fresh_dir("runner_csv");
  const RunOutcome out = run_experiment(tiny_linear_config(), root);
  REQUIRE(out.code == exit_code::ok);
  const auto rows = read_trajectory_csv(out.run_dir / "trajectory.csv");
  Trajectory again;
  again.samples = rows;
  write_trajectory_csv(out.run_dir / "rewrite.csv", again);
  CHECK(slurp(out.run_dir / "rewrite.csv") == slurp(out.run_dir / "trajectory.csv"));
}

TEST_CASE("runner exit codes") {
  const auto root = fresh_dir("runner_codes");

  SUBCASE("params: admissible 0, inadmissible 1, out of scope 3") {
    RunConfig c;
    c.experiment = ExperimentKind::Params;
    c.setting = Setting::euclidean(3);
    c.gamma = 0.8;
    CHECK(run_experiment(c, root).code == exit_code::ok);
    c.gamma = 1.2;
    CHECK(run_experiment(c, root).code == exit_code::inadmissible);
    c.setting = Setting::euclidean(7);
    c.gamma = 0.5;
    CHECK(run_experiment(c, root).code == exit_code::out_of_scope);
  }

  SUBCASE("input errors leave a failure manifest") {
    RunConfig c = tiny_linear_config();
    c.data.kind = ProfileKind::PowerLawProfile;
    c.data.sigma = -1.0;  // not in Hneg(0.25)
    const RunOutcome out = run_experiment(c, root);
    CHECK(out.code == exit_code::input_error);
    const RunManifest m = RunManifest::load(out.run_dir);
    CHECK(m.status.find("failed") == 0);
  }

  SUBCASE("unexpected blow-up maps to 5") {
    RunConfig c = tiny_linear_config();
    c.nonlinearity = Nonlinearity::Kind::AbsPower;
    c.power = 2.0;
    c.grid = {256, 30.0};
    c.data.amplitude = 4.0;
    c.horizon = 200.0;
    c.expect_global = true;
    CHECK(run_experiment(c, root).code == exit_code::unexpected_blowup);
    c.expect_global = false;
    CHECK(run_experiment(c, root).code == exit_code::ok);
  }
}

TEST_CASE("runner: oracle experiment emits a table including refusals") {
  const auto root = fresh_dir("runner_oracle");
  RunConfig c;
  c.experiment = ExperimentKind::Oracle;
  c.oracle.cases = {{1, 0.25, 0}, {3, 1.2, 0}};  // second is beyond gamma_tilde
  c.oracle.t_lo = 1.0;
  c.oracle.t_hi = 100.0;
  c.oracle.t_points = 10;
  const RunOutcome out = run_experiment(c, root);
  REQUIRE(out.code == exit_code::ok);
  const std::string table = slurp(out.run_dir / "oracle.csv");
  CHECK(table.find("near-field") != std::string::npos);
  CHECK(table.find("refused") != std::string::npos);
  bool found = false;
  for (const auto& w : out.manifest.warnings)
    if (w.find("gamma*p/2 < 1 violated") != std::string::npos) found = true;
  CHECK(found);
}
