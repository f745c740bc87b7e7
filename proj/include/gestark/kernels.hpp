#pragma once

// Data-parallel inner loops. Each kernel has a serial reference in
// gestark::kernels::serial and an OpenMP version in gestark::kernels::omp
// with identical results; the serial versions exist for testing and
// benchmarking.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "gestark/experiment.hpp"
#include "gestark/fitting.hpp"
#include "gestark/stark.hpp"

namespace gestark::kernels {

/// Everything needed to synthesize dataset rows, with the Stark parameters
/// already reduced to one E^2 coefficient per hyperfine line.
struct SynthesisPlan {
  std::vector<double> sweep_v_per_cm;
  std::vector<NuclearProjection> lines;
  std::vector<double> line_coefficients;  // Hz per (V/um)^2, parallel to lines
  double e_internal_v_per_cm = 0.0;
  Polarity polarity = Polarity::Bipolar;
  double t_e_s = 10e-6;
  double phase_sigma_rad = 0.0;
  std::uint64_t seed = 0;

  std::size_t row_count() const noexcept { return sweep_v_per_cm.size() * lines.size(); }
};

/// Validates the inputs and reduces the parameters to per-line coefficients.
/// Throws EmptySweep, InvalidArgument or any stark_shift error.
SynthesisPlan make_plan(const DonorSpecies& donor, const StarkParameters& params,
                        const std::vector<double>& sweep_v_per_cm, double f0_hz, Polarity polarity,
                        const PulseSequence& seq, const NoiseModel& noise,
                        const StrainConfiguration& strain);

/// Standard normal deviate for (seed, row); same value on every thread.
double row_normal(std::uint64_t seed, std::uint64_t row);

/// Noiseless shift for one (field, line coefficient), in Hz.
double plan_shift(const SynthesisPlan& plan, double coefficient, double e_v_per_cm);

/// Table of noiseless shifts: result[i * lines + j] for sweep i, line j.
struct ShiftTable {
  std::size_t lines = 0;
  std::vector<double> values;
};

/// One Monte-Carlo trial: a noisy dataset regenerated with seed
/// base_seed + trial, then fitted.
struct EnsembleSpec {
  SynthesisPlan plan;
  DatasetMetadata metadata;
  DonorSpecies donor;
  double f0_hz;
  FitOptions fit;
  std::uint64_t base_seed = 0;
  std::size_t trials = 0;
};

struct EnsembleSample {
  double eta_g = 0.0;
  double eta_g_err = 0.0;
  std::optional<double> eta_a;
  std::optional<double> eta_a_err;
  double chi2_reduced = 0.0;
};

namespace serial {
void synthesize_rows(const SynthesisPlan& plan, std::span<EchoPhaseRow> out);
ShiftTable evaluate_shifts(const SynthesisPlan& plan);
std::vector<EnsembleSample> fit_ensemble(const EnsembleSpec& spec);
}  // namespace serial

namespace omp {
void synthesize_rows(const SynthesisPlan& plan, std::span<EchoPhaseRow> out);
ShiftTable evaluate_shifts(const SynthesisPlan& plan);
std::vector<EnsembleSample> fit_ensemble(const EnsembleSpec& spec);
}  // namespace omp

}  // namespace gestark::kernels
