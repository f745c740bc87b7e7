#include "gestark/experiment.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

#include "gestark/constants.hpp"
#include "gestark/error.hpp"
#include "gestark/kernels.hpp"

namespace gestark {

void PulseSequence::validate() const {
  for (double d : {t_half_pi, t_pi, tau, t_e}) {
    if (!(d > 0.0) || !std::isfinite(d)) {
      throw Error(ErrorKind::InvalidArgument, "pulse sequence durations must be positive");
    }
  }
  if (!(t_e < tau)) {
    throw Error(ErrorKind::InvalidArgument,
                fmt::format("field pulse t_E={} s must fit inside tau={} s", t_e, tau));
  }
}

const std::vector<SampleFixture>& sample_fixtures() {
  using D = MillerDirection;
  static const std::vector<SampleFixture> samples = {
      {1, "74Ge:As", Donor::As75, 3e15, {D{1, 1, 0}, D{0, 0, 1}}, 114e-6},
      {2, "natGe:As", Donor::As75, 1e15, {D{-1, 1, 1}, D{0, 1, -1}}, 55e-6},
      {3, "70Ge:P", Donor::P31, 1e12, {D{1, 0, 0}, D{0, 0, 1}}, 250e-6},
      {4, "natGe:P", Donor::P31, 4e14, {D{1, 1, 0}, D{0, 0, 1}}, 55e-6},
      {5, "natGe:P", Donor::P31, 1e13, {D{1, 1, 1}, D{1, -1, 0}}, 55e-6},
  };
  return samples;
}

const SampleFixture& sample_fixture(int id) {
  for (const auto& s : sample_fixtures()) {
    if (s.id == id) return s;
  }
  throw Error(ErrorKind::InvalidArgument, fmt::format("no sample {}", id));
}

std::vector<NuclearProjection> hyperfine_projections(const DonorSpecies& donor) {
  std::vector<NuclearProjection> out;
  for (int twice = -donor.twice_nuclear_spin; twice <= donor.twice_nuclear_spin; twice += 2) {
    out.push_back(NuclearProjection::from_twice(twice));
  }
  return out;
}

double phase_from_shift(double df_hz, double t_e_s) {
  if (!(t_e_s > 0.0)) throw Error(ErrorKind::InvalidArgument, "t_E must be positive");
  return constants::two_pi * df_hz * t_e_s;
}

double echo_amplitude(double tau_s, double t2_s) {
  if (!(tau_s > 0.0) || !(t2_s > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "tau and T2 must be positive");
  }
  return std::exp(-2.0 * tau_s / t2_s);
}

std::vector<NuclearProjection> simulated_lines(const DonorSpecies& donor,
                                               const StarkParameters& p) {
  if (p.eta_a) return hyperfine_projections(donor);
  return {NuclearProjection::averaged()};
}

kernels::SynthesisPlan kernels::make_plan(const DonorSpecies& donor, const StarkParameters& params,
                                          const std::vector<double>& sweep, double f0_hz,
                                          Polarity polarity, const PulseSequence& seq,
                                          const NoiseModel& noise,
                                          const StrainConfiguration& strain) {
  if (sweep.empty()) throw Error(ErrorKind::EmptySweep, "field sweep has no points");
  for (double e : sweep) {
    if (!std::isfinite(e)) throw Error(ErrorKind::InvalidArgument, "non-finite sweep value");
  }
  if (!(f0_hz > 0.0)) throw Error(ErrorKind::InvalidArgument, "f0 must be positive");
  if (!(noise.phase_sigma_rad >= 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "phase_sigma must be non-negative");
  }
  if (!std::isfinite(strain.e_internal_v_per_cm)) {
    throw Error(ErrorKind::InvalidArgument, "internal field must be finite");
  }
  seq.validate();

  kernels::SynthesisPlan plan;
  plan.sweep_v_per_cm = sweep;
  plan.lines = simulated_lines(donor, params);
  for (const auto& m : plan.lines) {
    plan.line_coefficients.push_back(shift_coefficient(params, donor, f0_hz, m));
  }
  plan.e_internal_v_per_cm = strain.e_internal_v_per_cm;
  plan.polarity = polarity;
  plan.t_e_s = seq.t_e;
  plan.phase_sigma_rad = noise.phase_sigma_rad;
  plan.seed = noise.seed;
  return plan;
}

EchoPhaseDataset generate_dataset(const DonorSpecies& donor, const StarkParameters& params,
                                  const std::vector<double>& sweep_v_per_cm,
                                  const FieldConfiguration& cfg, const PulseSequence& seq,
                                  const NoiseModel& noise, const StrainConfiguration& strain) {
  if (seq.polarity != cfg.polarity) {
    throw Error(ErrorKind::InvalidArgument, "pulse sequence and field polarity disagree");
  }
  const auto plan = kernels::make_plan(donor, params, sweep_v_per_cm, cfg.f0_hz, cfg.polarity, seq,
                                       noise, strain);

  EchoPhaseDataset data;
  data.metadata = {donor.name,
                   cfg.e_direction,
                   cfg.b_direction,
                   cfg.f0_hz,
                   seq.t_e,
                   cfg.polarity,
                   noise.seed,
                   noise.phase_sigma_rad,
                   strain.e_internal_v_per_cm};
  data.rows.resize(plan.row_count());
  kernels::omp::synthesize_rows(plan, data.rows);

  double worst = 0.0;
  for (const auto& r : data.rows) {
    worst = std::max(worst, std::abs(phase_from_shift(r.df_hz, seq.t_e)));
  }
  if (worst > constants::pi / 2.0) {
    data.warnings.push_back(fmt::format(
        "PhaseWrapRisk: largest echo phase {:.3f} rad exceeds pi/2; a quadrature detector "
        "would wrap at +-pi",
        worst));
  }
  return data;
}

double phase_sigma_for_fraction(const DonorSpecies& donor, const StarkParameters& params,
                                const std::vector<double>& sweep_v_per_cm, double f0_hz,
                                const PulseSequence& seq, const StrainConfiguration& strain,
                                double fraction) {
  const auto plan =
      kernels::make_plan(donor, params, sweep_v_per_cm, f0_hz, seq.polarity, seq, {}, strain);
  const auto table = kernels::serial::evaluate_shifts(plan);
  double largest = 0.0;
  for (double v : table.values) largest = std::max(largest, std::abs(v));
  return fraction * largest * constants::two_pi * seq.t_e;
}

}  // namespace gestark
