#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gestark/geometry.hpp"
#include "gestark/stark.hpp"

namespace gestark {

/// Hahn echo with an electric-field pulse of length t_E inside the first
/// free-evolution window. Durations in seconds.
struct PulseSequence {
  double t_half_pi = 200e-9;
  double t_pi = 400e-9;
  double tau = 12e-6;
  double t_e = 10e-6;
  Polarity polarity = Polarity::Bipolar;

  /// Throws InvalidArgument unless all durations are positive and t_E < tau.
  void validate() const;
};

struct SampleFixture {
  int id;
  std::string material;
  Donor donor;
  double doping_per_cm3;
  std::array<MillerDirection, 2> faces;
  double t2_s;
};

/// The five measured crystals.
const std::vector<SampleFixture>& sample_fixtures();
const SampleFixture& sample_fixture(int id);

struct NoiseModel {
  double phase_sigma_rad = 0.0;
  std::uint64_t seed = 0;
};

struct EchoPhaseRow {
  double e_v_per_cm = 0.0;
  NuclearProjection m_i = NuclearProjection::averaged();
  double df_hz = 0.0;
  double sigma_hz = 0.0;
};

struct DatasetMetadata {
  Donor donor = Donor::As75;
  MillerDirection e_direction{0, 0, 1};
  MillerDirection b_direction{0, 0, 1};
  double f0_hz = 0.0;
  double t_e_s = 0.0;
  Polarity polarity = Polarity::Bipolar;
  std::uint64_t seed = 0;
  double phase_sigma_rad = 0.0;
  double e_internal_v_per_cm = 0.0;
};

struct EchoPhaseDataset {
  std::vector<EchoPhaseRow> rows;
  DatasetMetadata metadata;
  /// Non-fatal diagnostics such as PhaseWrapRisk.
  std::vector<std::string> warnings;
};

/// M_I = -I, -I+1, ..., +I.
std::vector<NuclearProjection> hyperfine_projections(const DonorSpecies& donor);

/// 2 pi df t_E, unwrapped.
double phase_from_shift(double df_hz, double t_e_s);

/// exp(-2 tau / T2).
double echo_amplitude(double tau_s, double t2_s);

/// Lines simulated for a parameter set: every M_I when eta_A is known,
/// otherwise only the line-averaged shift.
std::vector<NuclearProjection> simulated_lines(const DonorSpecies& donor, const StarkParameters& p);

/// Synthetic Mims-type measurement over a field sweep. Rows are ordered by
/// sweep index, then by M_I. Per-row noise is drawn from a stream keyed by
/// (seed, row index), so the result does not depend on thread scheduling.
/// cfg supplies directions, f0 and polarity; seq.polarity must agree.
/// Noise sigma is reported per row as phase_sigma / (2 pi t_E).
EchoPhaseDataset generate_dataset(const DonorSpecies& donor, const StarkParameters& params,
                                  const std::vector<double>& sweep_v_per_cm,
                                  const FieldConfiguration& cfg, const PulseSequence& seq,
                                  const NoiseModel& noise, const StrainConfiguration& strain);

/// Phase noise that gives a frequency resolution of `fraction` of the
/// largest noiseless shift in the sweep.
double phase_sigma_for_fraction(const DonorSpecies& donor, const StarkParameters& params,
                                const std::vector<double>& sweep_v_per_cm, double f0_hz,
                                const PulseSequence& seq, const StrainConfiguration& strain,
                                double fraction);

}  // namespace gestark
