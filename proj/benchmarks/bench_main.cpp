#include <benchmark/benchmark.h>

#include <complex>
#include <memory>
#include <vector>

#include "follmer/integral.hpp"
#include "follmer/pathgen.hpp"
#include "follmer/solvers.hpp"
#include "follmer/spectral.hpp"
#include "follmer/variation.hpp"

using namespace follmer;

namespace {

GridField gaussian_field(const GridPtr& grid, double width) {
  return sample_field(grid, [=](double x) {
    const double d = x / width;
    return std::complex<double>(std::exp(-0.5 * d * d), 0.0);
  });
}

void bm_fbm_generation(benchmark::State& state) {
  const int level = static_cast<int>(state.range(0));
  std::uint64_t seed = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(gen_fbm(0.25, level, seed++));
  }
  state.SetComplexityN(1 << level);
}
BENCHMARK(bm_fbm_generation)->Arg(10)->Arg(12)->Arg(14)->Complexity();

void bm_variation_limit(benchmark::State& state) {
  const int level = static_cast<int>(state.range(0));
  const SamplePath w = gen_fbm(0.25, level, 7);
  const PartitionSequence seq{PartitionKind::Dyadic,
                              {level - 4, level - 2, level}};
  for (auto _ : state) {
    benchmark::DoNotOptimize(variation_limit(w, seq, 4, seq.levels));
  }
  state.SetComplexityN(1 << level);
}
BENCHMARK(bm_variation_limit)->Arg(10)->Arg(12)->Arg(14)->Complexity();

void bm_compensated_sum(benchmark::State& state) {
  const int level = static_cast<int>(state.range(0));
  const SamplePath w = gen_fbm(0.25, level, 9);
  const auto F = polynomial_functional({0.0, 0.0, 0.0, 0.0, 1.0}, 4);
  const Partition part = make_partition(PartitionKind::Dyadic, level);
  for (auto _ : state) {
    benchmark::DoNotOptimize(compensated_sum(F, w, part, 1.0));
  }
  state.SetComplexityN(1 << level);
}
BENCHMARK(bm_compensated_sum)->Arg(10)->Arg(12)->Arg(14)->Complexity();

void bm_multiplier_apply(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto grid = std::make_shared<SpectralGrid>(n, 10.0);
  const MultiplierOperator heat = heat_semigroup(grid, 1.0, 1e-2);
  GridField f = gaussian_field(grid, 1.0);
  for (auto _ : state) {
    f = heat.apply(f);
    benchmark::DoNotOptimize(f.samples.data());
  }
  state.SetComplexityN(static_cast<long long>(n));
}
BENCHMARK(bm_multiplier_apply)->Arg(256)->Arg(1024)->Arg(4096)->Complexity();

void bm_parabolic_step(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const SamplePath w = gen_fbm(0.25, 12, 11);
  const PartitionSequence seq{PartitionKind::Dyadic, {8, 10, 12}};
  const auto est = variation_limit(w, seq, 4, seq.levels);

  ParabolicProblem prob;
  prob.grid = std::make_shared<SpectralGrid>(n, 14.0);
  prob.g_samples.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = prob.grid->x(i);
    prob.g_samples[i] = 1.0 + 0.4 * std::exp(-0.08 * x * x);
  }
  prob.a_diff = 1.0;
  prob.x0 = gaussian_field(prob.grid, 1.5);
  prob.dt = 5e-3;
  const EvolutionSystem sys(prob, w, est);

  GridField x = prob.x0;
  double t = 0.0;
  for (auto _ : state) {
    x = sys.step(t, prob.dt, x);
    t += prob.dt;
    if (t > 0.9) {  // restart to stay inside [0,1]
      t = 0.0;
      x = prob.x0;
    }
    benchmark::DoNotOptimize(x.samples.data());
  }
  state.SetComplexityN(static_cast<long long>(n));
}
BENCHMARK(bm_parabolic_step)->Arg(128)->Arg(256)->Arg(512)->Complexity();

}  // namespace

BENCHMARK_MAIN();
