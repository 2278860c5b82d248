#include <benchmark/benchmark.h>

#include "fiberprod/automaton.hpp"
#include "fiberprod/counting.hpp"
#include "fiberprod/decide.hpp"
#include "fiberprod/presentation.hpp"
#include "fiberprod_cli/instance_io.hpp"

namespace {

using namespace fiberprod;

FiberInstance load(const std::string& name) {
  return cli::load_instance(std::string(FIBERPROD_DATA_DIR) + "/instances/" + name + ".json")
      .instance;
}

void BM_IndecomposablesSecondExample(benchmark::State& state) {
  const auto inst = load("second_example");
  const auto bound = static_cast<std::size_t>(state.range(0));
  const EnumerationOptions opts{.max_candidates = 1'000'000'000};
  for (auto _ : state) benchmark::DoNotOptimize(count_indecomposables_upto(inst, bound, bound, opts));
}
BENCHMARK(BM_IndecomposablesSecondExample)->DenseRange(4, 9)->Unit(benchmark::kMillisecond);

void BM_IndecomposablesChainSemilattice(benchmark::State& state) {
  const auto inst = load("chain_semilattice");
  const auto bound = static_cast<std::size_t>(state.range(0));
  const EnumerationOptions opts{.max_candidates = 1'000'000'000};
  for (auto _ : state) benchmark::DoNotOptimize(count_indecomposables_upto(inst, bound, bound, opts));
}
BENCHMARK(BM_IndecomposablesChainSemilattice)->DenseRange(4, 8, 2)->Unit(benchmark::kMillisecond);

void BM_BuildAutomaton(benchmark::State& state) {
  const auto inst = load("cyclic_automaton");
  for (auto _ : state) {
    auto aut = TwoTapeAutomaton::build(inst);
    benchmark::DoNotOptimize(has_cycle(aut));
  }
}
BENCHMARK(BM_BuildAutomaton);

void BM_PumpWitness(benchmark::State& state) {
  const auto aut = TwoTapeAutomaton::build(load("cyclic_automaton"));
  const auto cycle = *has_cycle(aut);
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(pump_witness(aut, cycle, n));
}
BENCHMARK(BM_PumpWitness)->RangeMultiplier(4)->Range(1, 256);

void BM_DecideCorpus(benchmark::State& state) {
  std::vector<FiberInstance> corpus;
  for (const auto* name : {"second_example", "first_example", "cyclic_z6", "klein_four",
                           "naturals_singleton", "naturals_both_large", "left_zero"}) {
    corpus.push_back(load(name));
  }
  for (auto _ : state) {
    for (const auto& inst : corpus) benchmark::DoNotOptimize(decide(inst));
  }
}
BENCHMARK(BM_DecideCorpus)->Unit(benchmark::kMillisecond);

void BM_NormalForm(benchmark::State& state) {
  const auto pres = Presentation::build(Alphabet::make("A", {"a", "b"}),
                                        Alphabet::make("B", {"c"}), 3, 1, 1);
  GammaWord w;
  for (std::size_t i = 0; i < static_cast<std::size_t>(state.range(0)); ++i) {
    w.push_back((i * 7 + 3) % pres.symbols().size());
  }
  for (auto _ : state) benchmark::DoNotOptimize(pres.normal_form(w));
}
BENCHMARK(BM_NormalForm)->RangeMultiplier(4)->Range(4, 1024);

void BM_Census(benchmark::State& state) {
  const auto m = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(census(m, m));
}
BENCHMARK(BM_Census)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

void BM_CountFiber(benchmark::State& state) {
  const auto m = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(count_fiber(m, m));
}
BENCHMARK(BM_CountFiber)->RangeMultiplier(2)->Range(4, 64);

}  // namespace

BENCHMARK_MAIN();
