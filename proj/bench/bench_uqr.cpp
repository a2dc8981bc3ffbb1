#include <benchmark/benchmark.h>
#include <omp.h>

#include "uqr/combid.hpp"
#include "uqr/evalrep.hpp"
#include "uqr/rfactor.hpp"

using namespace uqr;

static Element sample_word(int L) {
  Word w;
  for (int i = 0; i < L; ++i) w.push_back(L - 2 * i);
  return Element(Kind::E, w);
}

static void BM_straighten_serial(benchmark::State& st) {
  Element x = sample_word(int(st.range(0)));
  for (auto _ : st) {
    clear_caches();
    benchmark::DoNotOptimize(straighten_serial(x));
  }
}
BENCHMARK(BM_straighten_serial)->Arg(3)->Arg(4)->Arg(5);

static void BM_straighten_parallel(benchmark::State& st) {
  Element x = sample_word(int(st.range(0)));
  for (auto _ : st) {
    clear_caches();
    benchmark::DoNotOptimize(straighten(x));
  }
}
BENCHMARK(BM_straighten_parallel)->Arg(3)->Arg(4)->Arg(5);

static void BM_tensor_multiply(benchmark::State& st) {
  Tensor a = rbar_component(1, int(st.range(0))), b = rbar_component(2, int(st.range(0)));
  bool serial = st.range(1) == 0;
  for (auto _ : st) {
    clear_caches();
    benchmark::DoNotOptimize(serial ? multiply_serial(a, b) : multiply(a, b));
  }
}
BENCHMARK(BM_tensor_multiply)->Args({2, 0})->Args({2, 1})->Args({3, 0})->Args({3, 1});

static void BM_R_component(benchmark::State& st) {
  int threads = int(st.range(1));
  int saved = omp_get_max_threads();
  omp_set_num_threads(threads);
  for (auto _ : st) {
    clear_caches();
    benchmark::DoNotOptimize(R_component(int(st.range(0)), Split::PlusMinus, 3, RMethod::Recurrence));
  }
  omp_set_num_threads(saved);
}
BENCHMARK(BM_R_component)->Args({2, 1})->Args({3, 1})->Args({3, 4})->Unit(benchmark::kMillisecond);

static void BM_eval_integral(benchmark::State& st) {
  SpinRep v = spin_rep(int(st.range(1)));
  for (auto _ : st) benchmark::DoNotOptimize(I_eval(int(st.range(0)), Split::PlusMinus, v, v));
}
BENCHMARK(BM_eval_integral)->Args({2, 1})->Args({3, 2})->Unit(benchmark::kMillisecond);

static void BM_lstat(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(lstat_check(int(st.range(0)), 40));
}
BENCHMARK(BM_lstat)->Arg(3)->Arg(6)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
