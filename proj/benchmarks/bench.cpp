#include <benchmark/benchmark.h>

#include "hyperdyn/horseshoe.hpp"
#include "hyperdyn/symbolic.hpp"
#include "hyperdyn/toral.hpp"
#include "hyperdyn/tools/pgm.hpp"

namespace {

using namespace hyperdyn;

void BM_MatPow(benchmark::State& state) {
  const long long n = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(mat_pow(cat_matrix(), n));
}
BENCHMARK(BM_MatPow)->RangeMultiplier(10)->Range(10, 100000);

void BM_Period(benchmark::State& state) {
  const long long q = state.range(0);
  const TorusPoint p{QuadNum(Rational(BigInt(1), BigInt(q))), QuadNum(Rational(BigInt(2), BigInt(q)))};
  for (auto _ : state) benchmark::DoNotOptimize(period(p));
}
BENCHMARK(BM_Period)->Arg(7)->Arg(101)->Arg(1009);

void BM_SeqProximal(benchmark::State& state) {
  const BiSeq x = BiSeq::parse("(011)* 10 . 1101 (001011)*");
  const BiSeq y = BiSeq::parse("(1)* 0 . 0110 (011001)*");
  for (auto _ : state) benchmark::DoNotOptimize(seq_proximal(x, y));
}
BENCHMARK(BM_SeqProximal);

void BM_Encode(benchmark::State& state) {
  const auto prm = HorseshoeParams::defaults();
  const SquarePoint p = periodic_point(prm, {0, 1, 1, 0, 1});
  const int depth = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(encode(prm, p, depth));
}
BENCHMARK(BM_Encode)->Arg(8)->Arg(32)->Arg(64);

void BM_CatImage(benchmark::State& state) {
  const auto img = tools::index_image(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(tools::cat_image(img, 1));
}
BENCHMARK(BM_CatImage)->Arg(101)->Arg(256);

}  // namespace
BENCHMARK_MAIN();
