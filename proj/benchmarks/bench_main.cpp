#include <benchmark/benchmark.h>

#include <algorithm>
#include <random>

#include "stereo/stereo.hpp"

using namespace stereo;

namespace {

CheckOptions sweep_options(unsigned threads) {
  CheckOptions o;
  o.override_scale_limit = true;
  o.threads = threads;
  return o;
}

// Worlds, threads.
void BM_MonotonicitySweep(benchmark::State& state) {
  const auto kb = gen::example4(static_cast<std::size_t>(state.range(0)));
  const auto options = sweep_options(static_cast<unsigned>(state.range(1)));
  std::uint64_t cases = 0;
  for (auto _ : state) {
    const auto r = check_eq2(kb, options);
    cases += r.stats.cases;
    benchmark::DoNotOptimize(r.verdict);
  }
  state.counters["cases/s"] = benchmark::Counter(static_cast<double>(cases), benchmark::Counter::kIsRate);
}
BENCHMARK(BM_MonotonicitySweep)->Args({4, 1})->Args({5, 1})->Args({6, 1})->Args({6, 0})->Unit(benchmark::kMillisecond);

void BM_UnionLawSweep(benchmark::State& state) {
  const auto kb = gen::example3(static_cast<std::size_t>(state.range(0)));
  const auto options = sweep_options(0);
  for (auto _ : state) benchmark::DoNotOptimize(check_assumption_four(kb, options).verdict);
}
BENCHMARK(BM_UnionLawSweep)->DenseRange(4, 6)->Unit(benchmark::kMillisecond);

void BM_SelectionStability(benchmark::State& state) {
  std::mt19937_64 rng(7);
  const auto kb = gen::random_monotone_table(static_cast<std::size_t>(state.range(0)), 5, rng);
  const auto options = sweep_options(0);
  for (auto _ : state) benchmark::DoNotOptimize(verify_theorem1(kb, options).verdict);
}
BENCHMARK(BM_SelectionStability)->DenseRange(3, 5)->Unit(benchmark::kMillisecond);

void BM_NmConsequences(benchmark::State& state) {
  const auto kb = gen::example2(static_cast<std::size_t>(state.range(0)));
  const std::uint64_t sets = std::uint64_t{1} << kb.space().size();
  std::uint64_t b = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(nm_consequences(kb, InfoSet(b)).consequences);
    b = b + 1 < sets ? b + 1 : 1;
  }
}
BENCHMARK(BM_NmConsequences)->DenseRange(3, 6);

void BM_IsRepresentable(benchmark::State& state) {
  std::mt19937_64 rng(11);
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto kb = gen::random_monotone_table(n, std::min<std::size_t>(4, (std::size_t{1} << n) - 1), rng, true);
  const auto f = selection_of(kb);
  std::vector<InfoSet> st;
  for (const auto& s : kb.stereotypes()) st.push_back(s.extent);
  for (auto _ : state) benchmark::DoNotOptimize(is_representable(f, st, 100'000'000).verdict);
}
BENCHMARK(BM_IsRepresentable)->DenseRange(2, 4)->Unit(benchmark::kMicrosecond);

// Worlds, max stereotypes, threads.
void BM_Search(benchmark::State& state) {
  SearchOptions o;
  o.world_count = static_cast<std::size_t>(state.range(0));
  o.max_stereotypes = static_cast<std::size_t>(state.range(1));
  o.threads = static_cast<unsigned>(state.range(2));
  for (auto _ : state) benchmark::DoNotOptimize(search_nonrepresentable(o).found.size());
}
BENCHMARK(BM_Search)->Args({2, 0, 1})->Args({3, 2, 1})->Args({3, 2, 0})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
