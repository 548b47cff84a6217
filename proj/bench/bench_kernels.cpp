// Serial reference kernels against their OpenMP counterparts, plus one
// end-to-end EDICT round trip. Set OMP_NUM_THREADS to vary the parallel side.

#include <benchmark/benchmark.h>

#include <vector>

#include "semsteg/edict.hpp"
#include "semsteg/kernels.hpp"
#include "semsteg/token.hpp"

using namespace semsteg;

namespace {

std::vector<double> filled(std::size_t n, const char* name) {
  const auto g = init_latent(name, Shape{1, 1, n});
  return {g.values().begin(), g.values().end()};
}

template <auto Matvec>
void BM_Matvec(benchmark::State& state) {
  const auto rows = static_cast<std::size_t>(state.range(0));
  const std::size_t cols = rows;
  const auto w = filled(rows * cols, "w");
  const auto x = filled(cols, "x");
  std::vector<double> y(rows);
  for (auto _ : state) {
    Matvec(w, rows, cols, x, y);
    benchmark::DoNotOptimize(y.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(rows * cols));
}

template <auto Axpby>
void BM_Axpby(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto x = filled(n, "x");
  const auto y = filled(n, "y");
  std::vector<double> out(n);
  for (auto _ : state) {
    Axpby(0.9, x, -0.1, y, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}

template <auto SumSq>
void BM_SumSqDiff(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = filled(n, "a");
  const auto b = filled(n, "b");
  for (auto _ : state) benchmark::DoNotOptimize(SumSq(a, b));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}

void BM_EdictRoundTrip(benchmark::State& state) {
  const auto side = static_cast<std::size_t>(state.range(0));
  const Shape shape{4, side, side};
  const auto sched = build_schedule(50);
  const Predictor pred({PredictorKind::TinyMLP, Seed64{1}}, shape);
  const auto x = CoupledState::replicate(init_latent("bench", shape));
  const SamplerParams params{0.93, 1.0};
  for (auto _ : state) {
    auto s = edict_forward(x, sched, pred, nullptr, params);
    benchmark::DoNotOptimize(edict_reverse(s, sched, pred, nullptr, params));
  }
}

}  // namespace

BENCHMARK(BM_Matvec<kernels::serial::matvec>)->Name("matvec/serial")->Arg(256)->Arg(1024);
BENCHMARK(BM_Matvec<kernels::parallel::matvec>)->Name("matvec/parallel")->Arg(256)->Arg(1024);
BENCHMARK(BM_Axpby<kernels::serial::axpby>)->Name("axpby/serial")->Arg(1 << 12)->Arg(1 << 20);
BENCHMARK(BM_Axpby<kernels::parallel::axpby>)->Name("axpby/parallel")->Arg(1 << 12)->Arg(1 << 20);
BENCHMARK(BM_SumSqDiff<kernels::serial::sum_sq_diff>)->Name("sum_sq_diff/serial")->Arg(1 << 20);
BENCHMARK(BM_SumSqDiff<kernels::parallel::sum_sq_diff>)->Name("sum_sq_diff/parallel")->Arg(1 << 20);
BENCHMARK(BM_EdictRoundTrip)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
