#include <benchmark/benchmark.h>

#include <random>

#include "perphylo/perphylo.hpp"

namespace {

using namespace perphylo;

// First generated instance at this size whose conflict count is in [1, max_conflicts].
BinaryMatrix conflicted(std::size_t species, std::size_t characters, std::size_t max_conflicts) {
  for (std::uint64_t seed = 1;; ++seed) {
    GeneratorParams p;
    p.species = species;
    p.characters = characters;
    p.loss_probability = 1.0;
    p.seed = seed;
    p.allow_duplicate_rows = true;
    auto inst = generate_instance(p);
    const auto c = count_conflicts(inst.matrix);
    if (c >= 1 && c <= max_conflicts) return std::move(inst.matrix);
  }
}

void BM_SolveGenerated(benchmark::State& state) {
  const auto me = build_extended(conflicted(state.range(0), state.range(1), 5));
  for (auto _ : state) {
    auto out = decide_pp(me, {.order = Ordering::ComponentDegree});
    benchmark::DoNotOptimize(out);
  }
}
BENCHMARK(BM_SolveGenerated)->Args({20, 8})->Args({50, 15})->Args({1000, 15})->Unit(benchmark::kMicrosecond);

void BM_RealizeAll(benchmark::State& state) {
  const auto m = conflicted(state.range(0), 15, 5);
  const auto me = build_extended(m);
  const auto out = decide_pp(me, {.order = Ordering::ComponentDegree});
  if (out.status != SolveStatus::Sat) {
    state.SkipWithError("instance not solved");
    return;
  }
  for (auto _ : state) {
    auto r = replay(me, out.reduction);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_RealizeAll)->Arg(50)->Arg(1000)->Unit(benchmark::kMicrosecond);

void BM_Oracle(benchmark::State& state) {
  std::mt19937_64 rng(3);
  const auto me = build_extended(random_matrix(5, state.range(0), rng));
  for (auto _ : state) {
    auto found = oracle_solve(me);
    benchmark::DoNotOptimize(found);
  }
}
BENCHMARK(BM_Oracle)->Arg(3)->Arg(4)->Unit(benchmark::kMicrosecond);

void BM_ForbiddenScan(benchmark::State& state) {
  const auto m = conflicted(state.range(0), 15, 5);
  for (auto _ : state) {
    auto w = has_forbidden_submatrix(m);
    benchmark::DoNotOptimize(w);
  }
}
BENCHMARK(BM_ForbiddenScan)->Arg(50)->Arg(1000);

}  // namespace

BENCHMARK_MAIN();
