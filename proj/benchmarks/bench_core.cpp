// Microbenchmarks for the collection engine.
#include <benchmark/benchmark.h>

#include <random>

#include "sigma3/pcgroup.hpp"
#include "sigma3/serialize.hpp"

namespace {

using namespace sigma3;

PcGroupPtr upper_unitriangular_chain(int n) {
  // [a_j, a_i] = a_{j+1} for j = i+1, trivial cubes: a long thin class chain
  auto g = std::make_shared<PcGroup>(3, n);
  for (int j = 1; j + 1 < n; ++j) g->set_commutator_word(j, j - 1, {GenExp{(std::uint16_t)(j + 1), 1}});
  return g;
}

void BM_collect_mul(benchmark::State& state) {
  auto g = upper_unitriangular_chain((int)state.range(0));
  std::mt19937 rng(42);
  std::uniform_int_distribution<int> d(0, 2);
  ExpVec u(g->n), v(g->n);
  for (int i = 0; i < g->n; ++i) {
    u[i] = (Exp)d(rng);
    v[i] = (Exp)d(rng);
  }
  for (auto _ : state) {
    ExpVec r = g->mul(u, v);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_collect_mul)->Arg(8)->Arg(16)->Arg(32);

void BM_inverse(benchmark::State& state) {
  auto g = upper_unitriangular_chain((int)state.range(0));
  std::mt19937 rng(42);
  std::uniform_int_distribution<int> d(0, 2);
  ExpVec u(g->n);
  for (int i = 0; i < g->n; ++i) u[i] = (Exp)d(rng);
  for (auto _ : state) {
    ExpVec r = g->inv(u);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_inverse)->Arg(8)->Arg(16)->Arg(32);

}  // namespace

BENCHMARK_MAIN();
