#include <benchmark/benchmark.h>

#include "dyadic/kernels.hpp"
#include "dyadic/random.hpp"
#include "dyadic/shift.hpp"
#include "dyadic/weighted.hpp"

namespace {

using namespace dyadic;

StepFunction sample(int depth) {
  Rng rng(42);
  return random_function(depth, rng);
}

template <bool Parallel>
void BM_LevelSums(benchmark::State& state) {
  const StepFunction f = sample(static_cast<int>(state.range(0)));
  std::vector<double> sums(2 * f.size() - 1);
  for (auto _ : state) {
    if constexpr (Parallel)
      kernels::parallel::level_sums(f.cells(), sums);
    else
      kernels::serial::level_sums(f.cells(), sums);
    benchmark::DoNotOptimize(sums.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(f.size()));
}

template <bool Parallel>
void BM_HaarRoundTrip(benchmark::State& state) {
  const StepFunction f = sample(static_cast<int>(state.range(0)));
  std::vector<double> coeffs(f.size() - 1), cells(f.size()), scratch;
  for (auto _ : state) {
    if constexpr (Parallel) {
      const double mean = kernels::parallel::haar_analyze(f.cells(), coeffs, scratch);
      kernels::parallel::haar_synthesize(mean, coeffs, cells, scratch);
    } else {
      const double mean = kernels::serial::haar_analyze(f.cells(), coeffs, scratch);
      kernels::serial::haar_synthesize(mean, coeffs, cells, scratch);
    }
    benchmark::DoNotOptimize(cells.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(f.size()));
}

template <bool Parallel>
void BM_ApplyHilbert(benchmark::State& state) {
  const int depth = static_cast<int>(state.range(0));
  const StepFunction f = sample(depth);
  const HaarShiftSpec spec = dyadic_hilbert_spec(depth);
  const CompiledShift op = compile_shift(spec, TruncationPolicy::for_spec(spec, depth));
  for (auto _ : state) {
    StepFunction g = Parallel ? apply_compiled(op, f) : serial::apply_compiled(op, f);
    benchmark::DoNotOptimize(g);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(f.size()));
}

template <bool Parallel>
void BM_WeightedMaximal(benchmark::State& state) {
  const int depth = static_cast<int>(state.range(0));
  const StepFunction f = sample(depth);
  Rng rng(7);
  const StepFunction sigma = random_weight(depth, rng);
  for (auto _ : state) {
    StepFunction m = Parallel ? weighted_dyadic_maximal(f, sigma)
                              : serial::weighted_dyadic_maximal(f, sigma);
    benchmark::DoNotOptimize(m);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(f.size()));
}

}  // namespace

BENCHMARK(BM_LevelSums<false>)->Arg(12)->Arg(16)->Arg(20);
BENCHMARK(BM_LevelSums<true>)->Arg(12)->Arg(16)->Arg(20);
BENCHMARK(BM_HaarRoundTrip<false>)->Arg(12)->Arg(16)->Arg(20);
BENCHMARK(BM_HaarRoundTrip<true>)->Arg(12)->Arg(16)->Arg(20);
BENCHMARK(BM_ApplyHilbert<false>)->Arg(12)->Arg(16)->Arg(20);
BENCHMARK(BM_ApplyHilbert<true>)->Arg(12)->Arg(16)->Arg(20);
BENCHMARK(BM_WeightedMaximal<false>)->Arg(12)->Arg(16)->Arg(20);
BENCHMARK(BM_WeightedMaximal<true>)->Arg(12)->Arg(16)->Arg(20);

BENCHMARK_MAIN();
