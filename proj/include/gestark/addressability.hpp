#pragma once

#include <string>

#include "gestark/stark.hpp"

namespace gestark {

/// Largest Stark-shift reported for a donor electron spin in silicon
/// (121Sb, M_I = 5/2), kept as a fixed comparison point.
struct SiliconReference {
  static constexpr double shift_hz = -3.0;
  static constexpr double field_v_per_cm = 50.0;
};

inline constexpr double kDefaultMaxField = 480.0;   // V/cm, highest non-ionizing field shown
inline constexpr double kDefaultLinewidth = 1.1e6;  // Hz, 0.01 % 73Ge enriched material

struct TunabilityReport {
  double max_shift_hz = 0.0;
  double linewidth_hz = 0.0;
  double ratio = 0.0;
  double e_max_v_per_cm = 0.0;
  std::string donor;
  std::string e_orientation;
  std::string b_orientation;
  std::string source;
  double comparison_shift_si_hz = SiliconReference::shift_hz;
  double comparison_field_si_v_per_cm = SiliconReference::field_v_per_cm;
};

/// Line-averaged shift at e_max relative to the ensemble linewidth.
TunabilityReport tunability(const StarkParameters& params, const DonorSpecies& donor, double f0_hz,
                            double e_max_v_per_cm, double linewidth_hz,
                            const std::string& e_orientation = "",
                            const std::string& b_orientation = "");

std::string tunability_json(const TunabilityReport& r);
std::string tunability_table(const TunabilityReport& r);

}  // namespace gestark
