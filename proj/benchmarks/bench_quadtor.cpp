#include <benchmark/benchmark.h>

#include "quadtor/classify.hpp"
#include "quadtor/hyperjac.hpp"

using namespace quadtor;

namespace {

QuadElem k17(long a, long b, long den) { return QuadElem(make_rational(a, den), make_rational(b, den), 17); }

void BM_QuadElemMulDiv(benchmark::State& state) {
  QuadElem a = k17(3, -7, 11), b = k17(-5, 2, 9);
  for (auto _ : state) {
    QuadElem c = a * b;
    benchmark::DoNotOptimize(c / a);
  }
}
BENCHMARK(BM_QuadElemMulDiv);

void BM_EllipticAdd(benchmark::State& state) {
  EllipticCurveK E = mc_entry("X1_11").elliptic(17);
  ECPointK P = ECPointK::affine(k17(1, -1, 8), k17(7, 1, 16));
  ECPointK Q = ec_mul(E, 3, P);
  for (auto _ : state) benchmark::DoNotOptimize(ec_add(E, P, Q));
}
BENCHMARK(BM_EllipticAdd);

void BM_CantorAdd(benchmark::State& state) {
  HyperJacobian J(mc_entry("X1_16").hyper(), 17);
  JacElemK A = J.from_triple(parse_triple("(x^2+x,2x,2)", 17));
  JacElemK B = J.from_triple(parse_triple("(x-1,2,1)", 17));
  for (auto _ : state) benchmark::DoNotOptimize(hj_cantor(J, A, B));
}
BENCHMARK(BM_CantorAdd);

void BM_EllipticTorsionOverK(benchmark::State& state) {
  EllipticCurveK E = mc_entry("X1_2_12").elliptic();
  QuadField K(3);
  for (auto _ : state) benchmark::DoNotOptimize(ec_torsion_over_K(E, K));
}
BENCHMARK(BM_EllipticTorsionOverK)->Unit(benchmark::kMillisecond);

void BM_JacobianTorsionX18(benchmark::State& state) {
  HyperCurve C = mc_entry("X1_18").hyper();
  QuadField K(17);
  for (auto _ : state) benchmark::DoNotOptimize(hj_torsion_over_K(C, K));
}
BENCHMARK(BM_JacobianTorsionX18)->Unit(benchmark::kMillisecond);

void BM_ClassifyField17(benchmark::State& state) {
  RankOracle oracle = RankOracle::with_builtin_data();
  for (auto _ : state) benchmark::DoNotOptimize(cl_classify_field(17, oracle));
}
BENCHMARK(BM_ClassifyField17)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
