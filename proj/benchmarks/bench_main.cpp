#include <random>

#include <benchmark/benchmark.h>

#include "normfib/intmatrix.hpp"
#include "normfib/laurent.hpp"
#include "normfib/polytope.hpp"

using namespace normfib;

namespace {

IntMatrix random_matrix(std::mt19937_64& rng, int n, int span) {
  IntMatrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m.at(i, j) = std::int64_t(rng() % (2 * span + 1)) - span;
  return m;
}

}  // namespace

static void BM_SmithNormalForm(benchmark::State& state) {
  std::mt19937_64 rng(1);
  IntMatrix m = random_matrix(rng, int(state.range(0)), 50);
  for (auto _ : state) benchmark::DoNotOptimize(smith_normal_form(m));
}
BENCHMARK(BM_SmithNormalForm)->Arg(6)->Arg(12)->Arg(24);

static void BM_LaurentGcd(benchmark::State& state) {
  LaurentPoly x = LaurentPoly::variable(2, 0), y = LaurentPoly::variable(2, 1);
  LaurentPoly one = LaurentPoly::constant(2, 1);
  LaurentPoly c = (x - one) * (y - one) + x * y;
  LaurentPoly a = (x + y + one).pow(unsigned(state.range(0))) * c;
  LaurentPoly b = (x - y).pow(unsigned(state.range(0))) * c;
  for (auto _ : state) benchmark::DoNotOptimize(laurent_gcd(a, b));
}
BENCHMARK(BM_LaurentGcd)->Arg(2)->Arg(4);

static void BM_DualNormBall(benchmark::State& state) {
  std::mt19937_64 rng(2);
  std::vector<Exp> support;
  for (int i = 0; i < 12; ++i)
    support.push_back({int(rng() % 7) - 3, int(rng() % 7) - 3, int(rng() % 7) - 3});
  for (auto _ : state) {
    try {
      benchmark::DoNotOptimize(dual_norm_ball(support));
    } catch (const DegenerateHullError&) {
    }
  }
}
BENCHMARK(BM_DualNormBall);

BENCHMARK_MAIN();
