// Serial reference kernels against their OpenMP counterparts on the zone
// data the checks scan.

#include <benchmark/benchmark.h>

#include "ppmlab/debruijn.hpp"
#include "ppmlab/kernels.hpp"
#include "ppmlab/sequence.hpp"

using namespace ppmlab;

namespace {

const BitString& zone(unsigned n) {
  static std::vector<BitString> cache(20);
  if (cache[n].empty()) cache[n] = segment(n);
  return cache[n];
}

template <auto Fn>
void block_histogram(benchmark::State& state) {
  const unsigned n = static_cast<unsigned>(state.range(0));
  const auto& s = zone(n);
  for (auto _ : state) benchmark::DoNotOptimize(Fn(s.view(), n));
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * s.size()));
}

template <auto Fn>
void window_histogram(benchmark::State& state) {
  const unsigned n = static_cast<unsigned>(state.range(0));
  const auto db = martin_db(n).data;
  for (auto _ : state) benchmark::DoNotOptimize(Fn(db.view(), n, true));
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * db.size()));
}

template <auto Fn>
void count_occurrences(benchmark::State& state) {
  const auto text = sequence_prefix(static_cast<std::uint64_t>(state.range(0)));
  const auto pattern = BitString::from_string("0100000000001");
  for (auto _ : state) benchmark::DoNotOptimize(Fn(pattern.view(), text.view()));
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * text.size()));
}

}  // namespace

BENCHMARK(block_histogram<kernels::serial::block_histogram>)->Name("block_histogram/serial")->DenseRange(10, 16, 2);
BENCHMARK(block_histogram<kernels::parallel::block_histogram>)->Name("block_histogram/parallel")->DenseRange(10, 16, 2);
BENCHMARK(window_histogram<kernels::serial::window_histogram>)->Name("window_histogram/serial")->DenseRange(12, 20, 4);
BENCHMARK(window_histogram<kernels::parallel::window_histogram>)->Name("window_histogram/parallel")->DenseRange(12, 20, 4);
BENCHMARK(count_occurrences<kernels::serial::count_occurrences>)->Name("count_occurrences/serial")->Arg(1 << 20);
BENCHMARK(count_occurrences<kernels::parallel::count_occurrences>)->Name("count_occurrences/parallel")->Arg(1 << 20);

BENCHMARK_MAIN();
