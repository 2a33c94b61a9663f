// Serial reference against the OpenMP kernels on fixture-sized inputs.

#include <benchmark/benchmark.h>

#include "gppv/fixtures.hpp"
#include "gppv/kernels.hpp"
#include "gppv/wrt.hpp"
#include "gppv/zhat.hpp"

using namespace gppv;

namespace {

constexpr mpfr_prec_t kPrec = 128;

kernels::GaussSumInput gauss_input(const PlumbingGraph& g, long k) {
  kernels::GaussSumInput in;
  in.k = k;
  for (VertexId a : g.vertices()) {
    std::vector<long> row;
    for (VertexId b : g.vertices())
      row.push_back(a == b ? to_long_exact(g.weight(a)) : (g.has_edge(a, b) ? 1 : 0));
    in.w.push_back(row);
  }
  for (long mu = 1; mu < 2 * k; ++mu)
    if (mu % k) in.residues.push_back(mu);
  for (long j = 0; j < 4 * k; ++j) in.phase4k.push_back(BigComplex::e(Rational(j, 4 * k), kPrec));
  for (VertexId v : g.vertices()) {
    std::vector<BigComplex> fv;
    for (long mu : in.residues) fv.push_back(f_at_root(g.degree(v), k, mu).embed(kPrec));
    in.fval.push_back(fv);
  }
  return in;
}

template <bool Parallel>
void BM_gauss_sum(benchmark::State& st) {
  static const auto in = gauss_input(fixture("y2337"), 9);
  for (auto _ : st) {
    auto r = Parallel ? kernels::gauss_sum_parallel(in, kPrec) : kernels::gauss_sum_serial(in, kPrec);
    benchmark::DoNotOptimize(r);
  }
}

const PuiseuxSeries& y_series() {
  static const PuiseuxSeries s = zhat_all(fixture("e8"), 20000)[0];
  return s;
}

template <bool Parallel>
void BM_puiseux_eval(benchmark::State& st) {
  const PuiseuxSeries& s = y_series();
  const BigFloat t(Rational(1, 200), kPrec);
  for (auto _ : st) {
    auto r = Parallel ? kernels::puiseux_eval_parallel(s, 3, t, kPrec) : kernels::puiseux_eval_serial(s, 3, t, kPrec);
    benchmark::DoNotOptimize(r);
  }
  st.counters["terms"] = static_cast<double>(s.size());
}

const ZhatTable& e8_table() {
  static const ZhatTable tab = zhat_table(fixture("h"), 200000);
  return tab;
}

template <bool Parallel>
void BM_qseries_eval(benchmark::State& st) {
  const ZhatTable& tab = e8_table();
  const BigFloat t(Rational(1, 500), kPrec);
  for (auto _ : st) {
    auto r = Parallel ? kernels::qseries_eval_parallel(tab.n[0], tab.c[0], tab.denom, 5, t, kPrec)
                      : kernels::qseries_eval_serial(tab.n[0], tab.c[0], tab.denom, 5, t, kPrec);
    benchmark::DoNotOptimize(r);
  }
  st.counters["terms"] = static_cast<double>(tab.terms());
}

}  // namespace

BENCHMARK(BM_gauss_sum<false>)->Name("gauss_sum/serial")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_gauss_sum<true>)->Name("gauss_sum/parallel")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_puiseux_eval<false>)->Name("puiseux_eval/serial")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_puiseux_eval<true>)->Name("puiseux_eval/parallel")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_qseries_eval<false>)->Name("qseries_eval/serial")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_qseries_eval<true>)->Name("qseries_eval/parallel")->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
