#include <benchmark/benchmark.h>

#include <random>

#include "ghzq/decoherence.hpp"
#include "ghzq/estimators.hpp"
#include "ghzq/qfunction.hpp"
#include "ghzq/sampler.hpp"

using namespace ghzq;

namespace {

PhasePoint random_point(std::mt19937_64& gen, int m) {
  std::uniform_real_distribution<double> u(-1.0, 1.0), a(0.0, 6.283185307179586);
  PhasePoint p(m);
  for (auto& q : p) q = BlochSample::from_angles(std::acos(u(gen)), a(gen));
  return p;
}

}  // namespace

// Accepted samples per second, single thread.
static void BM_DrawPoint(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  PointSampler sampler(GhzSpec(m, 0.0));
  PhasePoint p(m);
  std::uint64_t index = 0;
  for (auto _ : state) {
    sampler.draw(1, index++, p);
    benchmark::DoNotOptimize(p.data());
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_DrawPoint)->RangeMultiplier(2)->Range(2, 128);

static void BM_QDensity(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  std::mt19937_64 gen(3);
  const GhzSpec spec(m, 0.4);
  const auto p = random_point(gen, m);
  for (auto _ : state) benchmark::DoNotOptimize(q_density(spec, p));
}
BENCHMARK(BM_QDensity)->RangeMultiplier(4)->Range(2, 128);

static void BM_BellWeight(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  std::mt19937_64 gen(4);
  const auto setup = convention_for(m, ConventionFamily::Auto);
  const BellWeigher weigh(setup.convention);
  const auto p = random_point(gen, m);
  for (auto _ : state) benchmark::DoNotOptimize(weigh(p));
}
BENCHMARK(BM_BellWeight)->RangeMultiplier(4)->Range(2, 128);

// End-to-end streaming estimate, all workers.
static void BM_SimulateBell(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const auto setup = convention_for(m, ConventionFamily::Auto);
  const std::uint64_t n = 200000;
  for (auto _ : state) {
    auto run = simulate_bell(setup, {n, 9, 0});
    benchmark::DoNotOptimize(run.bell.f_value);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_SimulateBell)->Arg(3)->Arg(11)->Arg(21)->Arg(60)->Unit(benchmark::kMillisecond);

static void BM_DecayCurve(benchmark::State& state) {
  const auto setup = convention_for(static_cast<int>(state.range(0)), ConventionFamily::Auto);
  const std::uint64_t n = 50000;
  for (auto _ : state) {
    auto curve = decay_curve(setup, {0.1, 30, 5}, n);
    benchmark::DoNotOptimize(curve.points.back().f_ratio);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_DecayCurve)->Arg(2)->Arg(6)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
