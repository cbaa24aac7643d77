// Serial reference vs OpenMP kernels, plus one full SINE run.

#include <benchmark/benchmark.h>
#include <omp.h>

#include <random>

#include "sine/kernels.hpp"
#include "sine/problem.hpp"
#include "sine/sine_solver.hpp"

namespace {

std::vector<double> random_vector(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> v(n);
  for (auto& e : v) e = u(rng);
  return v;
}

template <bool Parallel>
void BM_Dot(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto x = random_vector(n, 1), y = random_vector(n, 2), w = random_vector(n, 3);
  for (auto _ : state) {
    double d = Parallel ? sine::kernels::parallel::dot(x, y, w) : sine::kernels::serial::dot(x, y, w);
    benchmark::DoNotOptimize(d);
  }
  state.SetBytesProcessed(static_cast<int64_t>(state.iterations() * n * 3 * sizeof(double)));
}

template <bool Parallel>
void BM_Gemv(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = random_vector(n * n, 4), x = random_vector(n, 5);
  std::vector<double> y(n);
  const sine::kernels::MatrixView view{a, n, n};
  for (auto _ : state) {
    if (Parallel) {
      sine::kernels::parallel::gemv(view, x, y);
    } else {
      sine::kernels::serial::gemv(view, x, y);
    }
    benchmark::DoNotOptimize(y.data());
  }
}

template <bool Parallel>
void BM_GemvT(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = random_vector(n * n, 6), y = random_vector(n, 7);
  std::vector<double> x(n);
  const sine::kernels::MatrixView view{a, n, n};
  for (auto _ : state) {
    if (Parallel) {
      sine::kernels::parallel::gemv_t(view, y, x);
    } else {
      sine::kernels::serial::gemv_t(view, y, x);
    }
    benchmark::DoNotOptimize(x.data());
  }
}

void BM_SineMultiplication(benchmark::State& state) {
  const auto p = sine::multiplication_problem(static_cast<std::size_t>(state.range(0)), 1.0, 1e-3);
  for (auto _ : state) {
    auto report = sine::run_sine(p, 1e-3, {1.001, 1e-3, 0});
    benchmark::DoNotOptimize(report.stopping_index);
  }
}

}  // namespace

BENCHMARK(BM_Dot<false>)->RangeMultiplier(8)->Range(1 << 10, 1 << 22);
BENCHMARK(BM_Dot<true>)->RangeMultiplier(8)->Range(1 << 10, 1 << 22);
BENCHMARK(BM_Gemv<false>)->RangeMultiplier(2)->Range(256, 2048);
BENCHMARK(BM_Gemv<true>)->RangeMultiplier(2)->Range(256, 2048);
BENCHMARK(BM_GemvT<false>)->RangeMultiplier(2)->Range(256, 2048);
BENCHMARK(BM_GemvT<true>)->RangeMultiplier(2)->Range(256, 2048);
BENCHMARK(BM_SineMultiplication)->Arg(4096)->Arg(1 << 16);

BENCHMARK_MAIN();
