#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "rittlab/calculus.hpp"
#include "rittlab/classify.hpp"
#include "rittlab/linalg.hpp"
#include "rittlab/rbound.hpp"
#include "rittlab/samplers.hpp"

using namespace rittlab;

namespace {

Matrix ritt_sample(std::size_t dim, const PeripheralSet& e, std::uint64_t seed = 1) {
  std::mt19937_64 rng(seed);
  return random_ritt_e(dim, e, rng, {.inner_radius = 0.8});
}

void BM_Eigenvalues(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const Matrix t = random_matrix(static_cast<std::size_t>(state.range(0)), rng);
  for (auto _ : state) benchmark::DoNotOptimize(eigenvalues(t));
}
BENCHMARK(BM_Eigenvalues)->RangeMultiplier(2)->Range(4, 64);

void BM_OpNorm(benchmark::State& state) {
  std::mt19937_64 rng(2);
  const Matrix t = random_matrix(static_cast<std::size_t>(state.range(0)), rng);
  const double p = static_cast<double>(state.range(1)) / 10.0;
  for (auto _ : state) benchmark::DoNotOptimize(op_norm(t, p));
}
BENCHMARK(BM_OpNorm)->ArgsProduct({{4, 8, 16}, {15, 20, 30}});

void BM_FcContour(benchmark::State& state) {
  const auto e = PeripheralSet::roots_of_unity(static_cast<int>(state.range(1)));
  const Matrix t = ritt_sample(static_cast<std::size_t>(state.range(0)), e);
  const Polynomial phi = e.vanishing_polynomial() * Polynomial(std::vector<cplx>{1.0, 0.5, 0.25});
  for (auto _ : state) benchmark::DoNotOptimize(fc_contour(phi, t, e, 0.95));
}
BENCHMARK(BM_FcContour)->ArgsProduct({{4, 8, 16}, {1, 3}})->Unit(benchmark::kMillisecond);

void BM_ResolventConstant(benchmark::State& state) {
  const auto e = PeripheralSet::roots_of_unity(2);
  const Matrix t = ritt_sample(static_cast<std::size_t>(state.range(0)), e);
  for (auto _ : state) benchmark::DoNotOptimize(resolvent_constant(t, e));
}
BENCHMARK(BM_ResolventConstant)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_Rademacher(benchmark::State& state) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g(0.0, 1.0);
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<Vector> xs(n, Vector(8));
  for (auto& x : xs)
    for (auto& c : x) c = {g(rng), g(rng)};
  const RadMode mode = state.range(1) ? RadMode::MonteCarlo : RadMode::Exact;
  for (auto _ : state) benchmark::DoNotOptimize(rademacher_norm({xs, 3.0, mode}));
}
BENCHMARK(BM_Rademacher)->ArgsProduct({{4, 8, 12, 16}, {0, 1}});

void BM_CalculusConstant(benchmark::State& state) {
  const auto e = PeripheralSet::roots_of_unity(2);
  const Matrix t = ritt_sample(6, e);
  const Region region = build_stolz(e, 0.9);
  const ProbeConfig cfg{.max_degree = static_cast<int>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(calculus_constant(t, region, 2.0, cfg));
}
BENCHMARK(BM_CalculusConstant)->Arg(10)->Arg(25)->Arg(50)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
