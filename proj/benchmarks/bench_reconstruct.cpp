#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "oweno/problems.hpp"
#include "oweno/reconstruct.hpp"

using namespace oweno;

namespace {

template <class T>
std::vector<T> random_window(int r, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> val(-2.0, 2.0);
  std::vector<T> w(2 * r - 1);
  for (auto& x : w) x = ScalarTraits<T>::from_double(val(rng));
  return w;
}

template <class T>
void BM_reconstruct(benchmark::State& state, WeightVariant v) {
  const int r = static_cast<int>(state.range(0));
  auto st = build_tables(r, DataMode::PointValues);
  auto lt = load_tables<T>(st);
  auto params = WeightParams<T>::defaults(v, r);
  std::mt19937_64 rng(99);
  auto w = random_window<T>(r, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(reconstruct_value<T>(lt, w.data(), params));
  }
}

void BM_rhs_burgers(benchmark::State& state) {
  const long n = state.range(0);
  auto st = build_tables(3, DataMode::PointValues);
  auto lt = load_tables<double>(st);
  auto params = WeightParams<double>::defaults(WeightVariant::OWENO, 3);
  auto setup = make_example<double>("burgers");
  Grid1D<double> grid{setup.domain_a, setup.domain_b, n};
  std::vector<double> u(n);
  for (long i = 0; i < n; ++i) {
    double buf;
    setup.problem.initial(grid.center(i), &buf);
    u[i] = buf;
  }
  RhsWorkspace<double> ws;
  std::vector<double> rhs;
  for (auto _ : state) {
    spatial_rhs<double>(u, n, 0.0, grid, lt, params, setup.problem, ws, rhs);
    benchmark::DoNotOptimize(rhs.data());
  }
  state.SetItemsProcessed(state.iterations() * n);
}

void BM_build_tables(benchmark::State& state) {
  const int r = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto t = build_tables(r, DataMode::CellAverages);
    benchmark::DoNotOptimize(&t);
  }
}

void BM_reconstruct_f64(benchmark::State& state, WeightVariant v) {
  BM_reconstruct<double>(state, v);
}
void BM_reconstruct_dd(benchmark::State& state, WeightVariant v) {
  BM_reconstruct<DoubleDouble>(state, v);
}

}  // namespace

BENCHMARK_CAPTURE(BM_reconstruct_f64, js, WeightVariant::JS)->Arg(3)->Arg(4);
BENCHMARK_CAPTURE(BM_reconstruct_f64, oweno, WeightVariant::OWENO)->Arg(3)->Arg(4)->Arg(5);
BENCHMARK_CAPTURE(BM_reconstruct_dd, oweno, WeightVariant::OWENO)->Arg(3);
BENCHMARK(BM_rhs_burgers)->Arg(256)->Arg(2048);
BENCHMARK(BM_build_tables)->Arg(3)->Arg(6)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
