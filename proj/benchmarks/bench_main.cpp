#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "sigmalab/linear.hpp"
#include "sigmalab/semilinear.hpp"

using namespace sigmalab;

namespace {

const ModelParams kParams{2.0, 1.5, 1};

void bm_khat(benchmark::State& state) {
  // Sweep across both branches so the dispatch cost is included.
  double xi = 0.0;
  for (auto _ : state) {
    xi = xi < 8.0 ? xi + 1.0 / 64.0 : 0.0;
    benchmark::DoNotOptimize(khat(3.0, xi, kParams));
  }
}
BENCHMARK(bm_khat);

void bm_propagator_bc(benchmark::State& state) {
  double xi = 0.25;
  for (auto _ : state) {
    xi = xi < 8.0 ? xi * 1.001 : 0.25;
    const double beta = 0.5 * std::pow(xi, 2.0 * kParams.theta);
    const double c = std::pow(xi, 2.0 * kParams.sigma);
    benchmark::DoNotOptimize(propagator_bc(0.05, beta, c));
  }
}
BENCHMARK(bm_propagator_bc);

void bm_duhamel_weights(benchmark::State& state) {
  double xi = 0.25;
  for (auto _ : state) {
    xi = xi < 8.0 ? xi * 1.001 : 0.25;
    const double beta = 0.5 * std::pow(xi, 2.0 * kParams.theta);
    const double c = std::pow(xi, 2.0 * kParams.sigma);
    benchmark::DoNotOptimize(duhamel_weights_bc(0.05, beta, c));
  }
}
BENCHMARK(bm_duhamel_weights);

void bm_fft_roundtrip(benchmark::State& state) {
  Grid g;
  g.n = 1;
  g.points_per_axis = static_cast<int>(state.range(0));
  g.box_length = 100.0;
  const Field f = gaussian_data(g, 1.0, 2.0);
  for (auto _ : state) {
    const auto& freq = f.to_frequency();
    Field back = Field::from_frequency(g, freq);
    benchmark::DoNotOptimize(back[0]);
    benchmark::ClobberMemory();
  }
  state.SetItemsProcessed(state.iterations() * g.points_per_axis);
}
BENCHMARK(bm_fft_roundtrip)->Arg(1 << 12)->Arg(1 << 16)->Arg(1 << 19);

void bm_radial_l2(benchmark::State& state) {
  const RadialProfile data = gaussian_profile(3, 1.0, 1.0);
  const CutoffConfig cut;
  const DerivativeSpec plain;
  double t = 1.0;
  for (auto _ : state) {
    t = t < 1e4 ? t * 1.7 : 1.0;
    benchmark::DoNotOptimize(
        solve_linear_radial_l2(data, 3, t, plain, Zone::Full, kParams, cut, 1e-6));
  }
}
BENCHMARK(bm_radial_l2);

void bm_semilinear_step(benchmark::State& state) {
  SemilinearConfig cfg;
  cfg.params = ModelParams{0.5, 0.4, 1};
  cfg.alpha = 3.0;
  cfg.amplitude = 1e-3;
  cfg.width = 2.0;
  cfg.grid.n = 1;
  cfg.grid.points_per_axis = static_cast<int>(state.range(0));
  cfg.grid.box_length = 2000.0;
  cfg.t_end = 1e9;  // only sets auto step defaults; we drive manually
  SemilinearStepper stepper(cfg);
  const double h = 0.01;
  for (auto _ : state) {
    stepper.advance(h);
  }
  state.SetItemsProcessed(state.iterations() * cfg.grid.points_per_axis);
}
BENCHMARK(bm_semilinear_step)->Arg(1 << 12)->Arg(1 << 16);

}  // namespace

BENCHMARK_MAIN();
