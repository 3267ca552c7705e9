#include <benchmark/benchmark.h>

#include <random>

#include "drk/finiteness.hpp"
#include "drk/ktheory.hpp"
#include "drk/smith.hpp"

using namespace drk;

namespace {

IntMatrix random_matrix(std::mt19937_64& rng, std::size_t n, long bound) {
  std::uniform_int_distribution<long> d(-bound, bound);
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = d(rng);
  return m;
}

// m1 = A, m2 = A^2 - 2A + 1 commute for any A.
Rank2MatrixSystem system_of_size(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  const IntMatrix a = random_matrix(rng, n, 2);
  const IntMatrix one = IntMatrix::identity(n);
  IntMatrix b = a * a;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) b(i, j) += -2 * a(i, j) + one(i, j);
  return Rank2MatrixSystem(a, b);
}

void BM_SmithNormalForm(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(7);
  const IntMatrix a = random_matrix(rng, n, 9);
  for (auto _ : state) benchmark::DoNotOptimize(smith_normal_form(a));
}
BENCHMARK(BM_SmithNormalForm)->Arg(4)->Arg(8)->Arg(16)->Arg(32);

void BM_K0OfSystem(benchmark::State& state) {
  const auto s = system_of_size(static_cast<std::size_t>(state.range(0)), 11);
  for (auto _ : state) benchmark::DoNotOptimize(k0_of_system(s));
}
BENCHMARK(BM_K0OfSystem)->Arg(2)->Arg(4)->Arg(8)->Arg(12);

void BM_ConditionMSpanLp(benchmark::State& state) {
  const auto s = system_of_size(static_cast<std::size_t>(state.range(0)), 13);
  for (auto _ : state) benchmark::DoNotOptimize(condition_m(s));
}
BENCHMARK(BM_ConditionMSpanLp)->Arg(2)->Arg(3)->Arg(4)->Arg(8);

// Worst case for the search: (M) holds, so every box is exhausted.
void BM_ConditionMBruteForce(benchmark::State& state) {
  const IntMatrix p{{0, 0, 0, 1}, {1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}};
  const Rank2MatrixSystem s(p, p * p);
  BruteForceOptions o;
  o.coefficient_bound = state.range(0);
  o.threads = static_cast<unsigned>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(condition_m_bruteforce(s, o));
}
BENCHMARK(BM_ConditionMBruteForce)->Args({2, 1})->Args({4, 1})->Args({6, 1})->Args({6, 4})->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
