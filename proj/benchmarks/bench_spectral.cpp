#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

#include "critwave/evolve.hpp"
#include "critwave/norms.hpp"
#include "critwave/spectral.hpp"

using namespace critwave;

namespace {

SpectralField random_field(const Grid& g, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> s(g.size());
  for (auto& x : s) x = dist(rng);
  return transform_forward(g, std::span<const double>(s));
}

}  // namespace

static void BM_TransformRoundTrip(benchmark::State& state) {
  const Grid g = Grid::make(1, static_cast<int>(state.range(0)), 64.0);
  auto f = random_field(g, 1);
  for (auto _ : state) {
    auto samples = transform_inverse_real(f);
    auto back = transform_forward(g, std::span<const double>(samples));
    benchmark::DoNotOptimize(back.modes.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_TransformRoundTrip)->RangeMultiplier(4)->Range(256, 16384);

static void BM_PropagatorEntries(benchmark::State& state) {
  double k2 = 0.0;
  for (auto _ : state) {
    k2 += 1e-4;
    benchmark::DoNotOptimize(propagator_entries(1.7, k2));
  }
}
BENCHMARK(BM_PropagatorEntries);

static void BM_LinearFlow(benchmark::State& state) {
  const Grid g = Grid::make(1, static_cast<int>(state.range(0)), 64.0);
  EvolutionState s{random_field(g, 2), random_field(g, 3), 0.0};
  for (auto _ : state) {
    s = apply_linear_flow(s, 0.01);
    benchmark::DoNotOptimize(s.u_hat.modes.data());
  }
}
BENCHMARK(BM_LinearFlow)->Arg(4096)->Arg(8192);

static void BM_StrangStep(benchmark::State& state) {
  const Grid g = Grid::make(1, static_cast<int>(state.range(0)), 64.0);
  std::vector<double> bump(g.size());
  for (int i = 0; i < g.points_per_dim(); ++i) {
    const double x = g.coordinate(i);
    bump[static_cast<std::size_t>(i)] = 0.01 * std::exp(-0.5 * x * x);
  }
  EvolutionState s{transform_forward(g, std::span<const double>(bump)),
                   SpectralField::zero(g), 0.0};
  const Nonlinearity f = Nonlinearity::abs_power(11.0 / 3.0);
  for (auto _ : state) {
    s = step(s, 1e-3, f);
    benchmark::DoNotOptimize(s.u_hat.modes.data());
  }
}
BENCHMARK(BM_StrangStep)->Arg(1024)->Arg(4096)->Arg(8192);

static void BM_HnegNorm(benchmark::State& state) {
  const Grid g = Grid::make(1, 8192, 64.0);
  const auto f = random_field(g, 4);
  for (auto _ : state) benchmark::DoNotOptimize(norm(f, NormKind::hneg(0.25)));
}
BENCHMARK(BM_HnegNorm);

BENCHMARK_MAIN();
