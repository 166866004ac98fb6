#include <benchmark/benchmark.h>

#include <string>

#include "mdk/syntax.hpp"
#include "mdk/typecheck.hpp"

namespace {

std::string chained_definitions(int n) {
  std::string src = "nat : Type.\n0 : nat.\nS : nat -> nat.\ndef d0 : nat := 0.\n";
  for (int i = 1; i < n; ++i) {
    src += "def d" + std::to_string(i) + " : nat := S d" + std::to_string(i - 1) + ".\n";
  }
  return src;
}

void BM_ParseChain(benchmark::State& state) {
  std::string src = chained_definitions(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(mdk::parse_file(src));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ParseChain)->RangeMultiplier(4)->Range(16, 1024);

void BM_ElaborateChain(benchmark::State& state) {
  auto file = mdk::parse_file(chained_definitions(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(mdk::elaborate(file));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ElaborateChain)->RangeMultiplier(4)->Range(16, 1024);

}  // namespace
