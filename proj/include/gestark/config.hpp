#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gestark/experiment.hpp"
#include "gestark/fitting.hpp"
#include "gestark/g_tensor.hpp"
#include "gestark/geometry.hpp"
#include "gestark/registry.hpp"
#include "gestark/stark.hpp"

namespace gestark {

struct DonorBlock {
  Donor species = Donor::As75;
  std::optional<double> g0;
  std::optional<double> hyperfine_a_hz;
};

struct FieldBlock {
  MillerDirection e_direction{0, 0, 1};
  MillerDirection b_direction{0, 0, 1};
  std::optional<double> e_magnitude_v_per_cm;
  std::vector<double> sweep_v_per_cm;
  Polarity polarity = Polarity::Bipolar;
  std::optional<double> f0_hz;
  std::optional<double> b0_tesla;
};

/// Exactly one of `source` (registry lookup) or explicit eta values.
struct StarkBlock {
  std::optional<ParameterSource> source;
  std::optional<double> eta_g;
  std::optional<double> eta_a;
};

struct TunabilityBlock {
  double e_max_v_per_cm = 480.0;
  double linewidth_hz = 1.1e6;
};

struct GTensorBlock {
  std::optional<double> g_perp;
  std::optional<double> g_par;
  std::optional<std::array<double, 4>> weights;
  std::optional<double> kappa;
  /// Derive kappa from the resolved eta_g instead of giving it.
  bool calibrate = false;
};

struct AngleSweepBlock {
  std::vector<double> angles_deg;
  MillerDirection rotation_axis{0, 0, 1};
};

struct RunConfig {
  DonorBlock donor;
  FieldBlock field;
  std::optional<StarkBlock> stark;
  PulseSequence sequence;
  NoiseModel noise;
  StrainConfiguration strain;
  TunabilityBlock tunability;
  std::optional<GTensorBlock> gtensor;
  FitOptions fit;
  std::optional<AngleSweepBlock> angle_sweep;

  /// Schema-checked parse; unknown keys are rejected. Messages carry the
  /// JSON path and, where it can be located, the source line.
  static RunConfig parse(const std::string& text);

  DonorSpecies donor_species() const;
  /// f0 if given, else g0 mu_B B0 / h. Throws Config if neither is set.
  double f0_hz() const;
  FieldConfiguration field_configuration() const;
  /// Registry lookup or explicit values. Throws Config if the stark block is
  /// missing, or if the registry row has no values for the chosen source.
  StarkParameters stark_parameters(const StarkRegistry& registry) const;
  ValleyGTensor valley_g_tensor() const;
};

}  // namespace gestark
