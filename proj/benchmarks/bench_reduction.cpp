#include <benchmark/benchmark.h>

#include <string>

#include "mdk/bundle.hpp"
#include "mdk/rewrite.hpp"
#include "mdk/syntax.hpp"
#include "mdk/typecheck.hpp"

namespace {

const mdk::Signature& nat_signature() {
  static const mdk::Elaborated el = mdk::elaborate(mdk::parse_file(mdk::find_bundled("nat_t")->source));
  return el.signature;
}

mdk::Term numeral(std::int64_t n) {
  mdk::Term t = mdk::Term::constant("0");
  for (std::int64_t i = 0; i < n; ++i) t = mdk::Term::app(mdk::Term::constant("S"), t);
  return t;
}

void BM_SnfPlus(benchmark::State& state) {
  const auto& sig = nat_signature();
  mdk::Term t = mdk::Term::app(mdk::Term::constant("plus"), {numeral(state.range(0)), numeral(state.range(0))});
  for (auto _ : state) {
    mdk::Fuel fuel;
    benchmark::DoNotOptimize(mdk::snf(sig, t, fuel));
  }
}
BENCHMARK(BM_SnfPlus)->RangeMultiplier(4)->Range(4, 256);

void BM_SnfTriangular(benchmark::State& state) {
  const auto& sig = nat_signature();
  mdk::Term t = mdk::Term::app(mdk::Term::constant("tri"), numeral(state.range(0)));
  for (auto _ : state) {
    mdk::Fuel fuel(10'000'000);
    benchmark::DoNotOptimize(mdk::snf(sig, t, fuel));
  }
}
BENCHMARK(BM_SnfTriangular)->DenseRange(5, 25, 10);

void BM_ConvPlusCommutedNumerals(benchmark::State& state) {
  const auto& sig = nat_signature();
  mdk::Term a = mdk::Term::app(mdk::Term::constant("plus"), {numeral(state.range(0)), numeral(1)});
  mdk::Term b = mdk::Term::app(mdk::Term::constant("plus"), {numeral(1), numeral(state.range(0))});
  for (auto _ : state) {
    mdk::Fuel fuel;
    benchmark::DoNotOptimize(mdk::conv(sig, a, b, fuel));
  }
}
BENCHMARK(BM_ConvPlusCommutedNumerals)->RangeMultiplier(4)->Range(4, 256);

}  // namespace
