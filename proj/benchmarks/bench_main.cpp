#include <benchmark/benchmark.h>

#include "fairsample/fairness.hpp"
#include "fairsample/gmqaoa.hpp"
#include "fairsample/noise.hpp"
#include "fairsample/simulator.hpp"

using namespace fairsample;

namespace {

const char* const kArch[] = {"4L", "5T", "5T", "3L", "2L"};
const char* const kProblem[] = {"a", "b", "c", "d", "e"};

CompiledCircuit compiled(int i) {
  return build_full_circuit(kProblem[i], Architecture::named(kArch[i]), table_angles(kProblem[i]));
}

void BM_Compile(benchmark::State& state) {
  const int i = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(compiled(i));
  state.SetLabel(std::string(kProblem[i]) + kArch[i]);
}
BENCHMARK(BM_Compile)->DenseRange(0, 4);

void BM_Simulate(benchmark::State& state) {
  const auto cc = compiled(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(simulate(cc.circuit));
}
BENCHMARK(BM_Simulate)->DenseRange(0, 4);

void BM_SampleGateNoise(benchmark::State& state) {
  const auto cc = compiled(static_cast<int>(state.range(0)));
  NoiseModel noise;
  noise.gate_depolarizing[GateKind::CNOT] = 0.01;
  noise.gate_depolarizing[GateKind::PhaseShift] = 0.001;
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(sample(cc.circuit, &noise, 4096, seed++));
  state.SetItemsProcessed(state.iterations() * 4096);
}
BENCHMARK(BM_SampleGateNoise)->DenseRange(0, 4)->Unit(benchmark::kMillisecond);

void BM_SampleReadoutOnly(benchmark::State& state) {
  const auto cc = compiled(1);
  NoiseModel noise;
  for (int w = 0; w < cc.circuit.num_wires(); ++w) noise.readout[w] = {0.02, 0.05};
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(sample(cc.circuit, &noise, 40960, seed++));
  state.SetItemsProcessed(state.iterations() * 40960);
}
BENCHMARK(BM_SampleReadoutOnly)->Unit(benchmark::kMillisecond);

void BM_Nsrfs(benchmark::State& state) {
  NsrfsOptions opt;
  for (auto _ : state) {
    benchmark::DoNotOptimize(nsrfs_from_weights({0.3, 0.3, 0.2, 0.2}, opt));
    ++opt.seed;
  }
}
BENCHMARK(BM_Nsrfs)->Unit(benchmark::kMillisecond);

void BM_GridSearch(benchmark::State& state) {
  const auto model = circuit_model("b");
  for (auto _ : state) benchmark::DoNotOptimize(grid_search_angles(model, static_cast<int>(state.range(0)), 1));
}
BENCHMARK(BM_GridSearch)->Arg(20)->Arg(60)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
