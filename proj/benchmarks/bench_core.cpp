#include <benchmark/benchmark.h>

#include <random>
#include <sstream>

#include "parabver/compatibility.hpp"
#include "parabver/config.hpp"
#include "parabver/parabolicity.hpp"
#include "parabver/spectral.hpp"
#include "parabver/verifier.hpp"

using namespace parabver;

namespace {

ProblemSpec heat_spec() {
  std::istringstream in(
      "[problem]\nN 2\nn 2\nl 0 0\n[domain]\nkind slab\nlengths 1 1\n[system]\n"
      "a 1 1 (2,0) (0,0) 0 1\na 1 1 (0,2) (0,0) 0 1\na 2 2 (2,0) (0,0) 0 1\na 2 2 (0,2) (0,0) 0 1\n"
      "[boundary]\nb 1 1 (0,0) (0,0) 0 1\nb 2 2 (0,0) (0,0) 0 1\n");
  return *parse_config(in).problem;
}

SpectralField random_field(int m) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  SpectralField f({m, m, m}, {2.0, 1.0, 2.0}, true);
  for (auto& c : f.coeffs()) c = {g(rng), g(rng)};
  return f;
}

void BM_AnisoNorm(benchmark::State& state) {
  const SpectralField f = random_field(static_cast<int>(state.range(0)));
  const RegularityIndex idx(3.0, SlowlyVaryingFn::log_multiscale({1.0}));
  for (auto _ : state) benchmark::DoNotOptimize(aniso_norm(f, idx));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(f.size()));
}
BENCHMARK(BM_AnisoNorm)->Arg(16)->Arg(32)->Arg(64);

void BM_FromSamples(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const auto values = random_field(m).to_samples();
  for (auto _ : state)
    benchmark::DoNotOptimize(SpectralField::from_samples({m, m, m}, {2.0, 1.0, 2.0}, true, values));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(values.size()));
}
BENCHMARK(BM_FromSamples)->Arg(16)->Arg(32)->Arg(64);

void BM_ConditionII(benchmark::State& state) {
  const ProblemSpec spec = heat_spec();
  const auto samples = boundary_grid(spec, 0.5, static_cast<int>(state.range(0)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(check_condition_ii(spec, 0.5, samples));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(samples.size()));
}
BENCHMARK(BM_ConditionII)->Arg(64)->Arg(256);

void BM_BuildTraces(benchmark::State& state) {
  const ProblemSpec spec = heat_spec();
  MultiPoly u(3);
  for (int a = 0; a <= 4; ++a)
    for (int b = 0; a + b <= 6; ++b) u.add_term({a, b, 1}, 1.0 / (1 + a + b));
  const std::vector<MultiPoly> us{u, u};
  const LambdaImage img = apply_lambda(spec, us);
  const int r_max = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_traces(spec, img.f, img.h, r_max));
}
BENCHMARK(BM_BuildTraces)->Arg(1)->Arg(3);

void BM_SweepDraw(benchmark::State& state) {
  const ProblemSpec spec = heat_spec();
  const auto per = default_periods(spec);
  const int cutoff = static_cast<int>(state.range(0));
  const RegularityIndex idx(3.0);
  int draw = 0;
  for (auto _ : state) {
    const auto u = random_draw(spec, 3.0, cutoff, per, 7, draw++);
    benchmark::DoNotOptimize(isomorphism_ratio(spec, u, idx));
  }
}
BENCHMARK(BM_SweepDraw)->Arg(8)->Arg(16);

}  // namespace

BENCHMARK_MAIN();
