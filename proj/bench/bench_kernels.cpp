// Serial reference vs OpenMP kernels. Run with --benchmark_filter=... as usual.

#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "bcl/kernels.hpp"
#include "bcl/rng.hpp"
#include "bcl/simulation.hpp"

namespace {

std::vector<double> scores(std::size_t n) {
  bcl::CounterRng rng(1, {});
  std::vector<double> v(n);
  for (auto& x : v) x = std::exp(2.0 * rng.normal());
  return v;
}

template <bool Parallel>
void BM_WeightRows(benchmark::State& state) {
  const auto rows = static_cast<std::size_t>(state.range(0));
  const std::size_t cols = 64;
  const auto data = scores(rows * cols);
  std::vector<double> out(rows * cols);
  const bcl::MixtureParams p(0.9, 0.5, 0.1);
  for (auto _ : state) {
    if constexpr (Parallel) {
      bcl::weight_rows({data, rows, cols}, p, out);
    } else {
      bcl::weight_rows_serial({data, rows, cols}, p, out);
    }
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * rows * cols));
}

template <bool Parallel>
void BM_LossRows(benchmark::State& state) {
  const auto rows = static_cast<std::size_t>(state.range(0));
  const std::size_t cols = 64;
  const auto data = scores(rows * cols);
  const auto pos = scores(rows);
  std::vector<double> out(rows);
  const bcl::MixtureParams p(0.9, 0.5, 0.1);
  for (auto _ : state) {
    if constexpr (Parallel) {
      bcl::loss_rows(pos, {data, rows, cols}, p, out);
    } else {
      bcl::loss_rows_serial(pos, {data, rows, cols}, p, out);
    }
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * rows));
}

template <bool Parallel>
void BM_GenerateBatch(benchmark::State& state) {
  bcl::sim::SimConfig cfg;
  cfg.anchors = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    auto b = Parallel ? bcl::sim::generate_batch(cfg) : bcl::sim::generate_batch_serial(cfg);
    benchmark::DoNotOptimize(b.anchors.data());
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * cfg.anchors * cfg.negatives));
}

}  // namespace

BENCHMARK(BM_WeightRows<false>)->Name("weight_rows/serial")->Arg(1000)->Arg(10000);
BENCHMARK(BM_WeightRows<true>)->Name("weight_rows/omp")->Arg(1000)->Arg(10000)->UseRealTime();
BENCHMARK(BM_LossRows<false>)->Name("loss_rows/serial")->Arg(1000)->Arg(10000);
BENCHMARK(BM_LossRows<true>)->Name("loss_rows/omp")->Arg(1000)->Arg(10000)->UseRealTime();
BENCHMARK(BM_GenerateBatch<false>)->Name("generate_batch/serial")->Arg(1000);
BENCHMARK(BM_GenerateBatch<true>)->Name("generate_batch/omp")->Arg(1000)->UseRealTime();

BENCHMARK_MAIN();
