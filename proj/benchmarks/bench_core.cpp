#include <benchmark/benchmark.h>

#include "mepprove/exp_enclosure.hpp"
#include "mepprove/prover.hpp"
#include "mepprove/sturm.hpp"
#include "mepprove/taylor.hpp"

using namespace mepprove;

namespace {

Mep g_mep() {
  return Mep{{Rational(2), 0, 0}, {Rational(-6), 0, 1}, {Rational(-1), 3, 1},
             {Rational(6), 0, 2}, {Rational(-1), 3, 2}, {Rational(-2), 0, 3}};
}

Polynomial bound_for_g() {
  const Mep g = g_mep();
  const auto units = bounding_units(g, Rational(0), Rational(1), BoundMode::kPerTerm);
  const std::vector<unsigned> orders{12, 12, 9, 12, 12};
  return lower_bound_poly(g, units, assignment_from_orders(units, orders));
}

void BM_SturmCountOnG(benchmark::State& state) {
  const Polynomial G = bound_for_g();
  for (auto _ : state) benchmark::DoNotOptimize(count_roots_open(G, Rational(0), Rational(1)));
}
BENCHMARK(BM_SturmCountOnG);

void BM_ProveG(benchmark::State& state) {
  const Mep g = g_mep();
  for (auto _ : state) benchmark::DoNotOptimize(prove_positive(g, Rational(0), Rational(1)));
}
BENCHMARK(BM_ProveG);

void BM_EncloseExpNeg(benchmark::State& state) {
  const Rational eps = Rational(1) / Rational(10).pow(state.range(0));
  const Rational t = Rational::parse("37/7");
  for (auto _ : state) benchmark::DoNotOptimize(enclose_exp_neg(t, eps));
}
BENCHMARK(BM_EncloseExpNeg)->Arg(10)->Arg(30)->Arg(100);

void BM_Maclaurin(benchmark::State& state) {
  const auto n = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(maclaurin(n, Rational(3)));
}
BENCHMARK(BM_Maclaurin)->Arg(12)->Arg(40);

}  // namespace

BENCHMARK_MAIN();
