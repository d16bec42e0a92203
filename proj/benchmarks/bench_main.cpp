#include <benchmark/benchmark.h>

#include "p1/h0_fixture.hpp"
#include "p1/laurent.hpp"
#include "p1/matching.hpp"
#include "p1/normal_form.hpp"
#include "p1/p1_taylor.hpp"
#include "p1/poles.hpp"
#include "p1/predictor.hpp"
#include "p1/seeding.hpp"
#include "p1/transseries.hpp"

using namespace p1;

namespace {

const TransseriesTable& table() {
  static const TransseriesTable t = [] {
    TransseriesTable x = compute_transseries_table(40, 60);
    x.real_entries();
    return x;
  }();
  return t;
}

void BM_H0Series(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(compute_h0_series(static_cast<int>(st.range(0))));
}
BENCHMARK(BM_H0Series)->Arg(20)->Arg(60)->Unit(benchmark::kMillisecond);

void BM_TransseriesTable(benchmark::State& st) {
  const int K = static_cast<int>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(compute_transseries_table(K, 60));
}
BENCHMARK(BM_TransseriesTable)->Arg(10)->Arg(40)->Unit(benchmark::kMillisecond);

void BM_Gm(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(compute_Gm(static_cast<int>(st.range(0))));
}
BENCHMARK(BM_Gm)->Arg(2)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_TaylorCoeffs(benchmark::State& st) {
  P1State s;
  s.z = Complex(Real(-2));
  s.y = Complex(Real(0.5));
  s.yp = Complex(Real(0.25));
  for (auto _ : st) benchmark::DoNotOptimize(taylor_coeffs_regular(s, static_cast<int>(st.range(0))));
}
BENCHMARK(BM_TaylorCoeffs)->Arg(30)->Arg(90);

void BM_SeedAndIntegrate(benchmark::State& st) {
  const Complex C(Real(1e6));
  for (auto _ : st) {
    const Seed sd = seed_at_infinity(C, Real(30), table());
    benchmark::DoNotOptimize(integrate_normal(sd.state, {Complex(Real(15))}));
  }
}
BENCHMARK(BM_SeedAndIntegrate)->Unit(benchmark::kMillisecond);

void BM_FirstRealPole(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(first_real_pole(Real(1e6), Real(0), Real(5), table()));
}
BENCHMARK(BM_FirstRealPole)->Unit(benchmark::kMillisecond)->Iterations(3);

void BM_LaurentSeries(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(laurent_from_pole(Complex(Real(1)), Complex(Real(0)), 120));
}
BENCHMARK(BM_LaurentSeries);

void BM_Predictor(benchmark::State& st) {
  BasisOptions opt;
  opt.edges = static_cast<int>(st.range(0));
  for (auto _ : st) {
    HkSet s = build_hk(20, build_basis(opt, default_h0_fixture(), table()), table());
    benchmark::DoNotOptimize(predict({1e6, 0.0}, &s, 5));
  }
}
BENCHMARK(BM_Predictor)->Arg(256)->Arg(2048)->Unit(benchmark::kMillisecond)->Iterations(2);

}  // namespace

BENCHMARK_MAIN();
