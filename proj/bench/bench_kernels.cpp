// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include <vector>

#include "gestark/kernels.hpp"

using namespace gestark;

namespace {

DonorSpecies arsenic() {
  auto d = DonorSpecies::standard(Donor::As75);
  d.hyperfine_a_hz = 1e8;
  return d;
}

kernels::SynthesisPlan plan(std::size_t points) {
  std::vector<double> sweep(points);
  for (std::size_t i = 0; i < points; ++i) sweep[i] = -480.0 + 960.0 * i / (points - 1);
  PulseSequence seq;
  seq.polarity = Polarity::Unipolar;
  return kernels::make_plan(arsenic(), {-1.8e-3, -0.13, ParameterSource::Experiment}, sweep, 9.6e9,
                            Polarity::Unipolar, seq, {0.01, 1}, {12.0});
}

kernels::EnsembleSpec ensemble(std::size_t trials) {
  std::vector<double> sweep;
  for (int i = 0; i < 8; ++i) sweep.push_back(100.0 * i / 7.0);
  PulseSequence seq;
  kernels::EnsembleSpec spec{
      kernels::make_plan(arsenic(), {-1.8e-3, -0.13, ParameterSource::Experiment}, sweep, 9.6e9,
                         Polarity::Bipolar, seq, {0.01, 0}, {}),
      {},
      arsenic(),
      9.6e9,
      {},
      0,
      trials};
  spec.metadata.f0_hz = 9.6e9;
  return spec;
}

template <void (*Kernel)(const kernels::SynthesisPlan&, std::span<EchoPhaseRow>)>
void BM_synthesize(benchmark::State& state) {
  const auto p = plan(static_cast<std::size_t>(state.range(0)));
  std::vector<EchoPhaseRow> rows(p.row_count());
  for (auto _ : state) {
    Kernel(p, rows);
    benchmark::DoNotOptimize(rows.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(rows.size()));
}

template <kernels::ShiftTable (*Kernel)(const kernels::SynthesisPlan&)>
void BM_shifts(benchmark::State& state) {
  const auto p = plan(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(p));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(p.row_count()));
}

template <std::vector<kernels::EnsembleSample> (*Kernel)(const kernels::EnsembleSpec&)>
void BM_ensemble(benchmark::State& state) {
  const auto spec = ensemble(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(spec));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_synthesize<kernels::serial::synthesize_rows>)
    ->Name("synthesize/serial")
    ->Arg(1 << 12)
    ->Arg(1 << 16);
BENCHMARK(BM_synthesize<kernels::omp::synthesize_rows>)
    ->Name("synthesize/omp")
    ->Arg(1 << 12)
    ->Arg(1 << 16)
    ->UseRealTime();
BENCHMARK(BM_shifts<kernels::serial::evaluate_shifts>)
    ->Name("shifts/serial")
    ->Arg(1 << 12)
    ->Arg(1 << 16);
BENCHMARK(BM_shifts<kernels::omp::evaluate_shifts>)
    ->Name("shifts/omp")
    ->Arg(1 << 12)
    ->Arg(1 << 16)
    ->UseRealTime();
BENCHMARK(BM_ensemble<kernels::serial::fit_ensemble>)->Name("ensemble/serial")->Arg(256)->Arg(1024);
BENCHMARK(BM_ensemble<kernels::omp::fit_ensemble>)
    ->Name("ensemble/omp")
    ->Arg(256)
    ->Arg(1024)
    ->UseRealTime();

BENCHMARK_MAIN();
