#include "gestark/addressability.hpp"

#include <fmt/format.h>

#include <cmath>
#include <json.hpp>

#include "gestark/error.hpp"

namespace gestark {

TunabilityReport tunability(const StarkParameters& params, const DonorSpecies& donor, double f0_hz,
                            double e_max_v_per_cm, double linewidth_hz,
                            const std::string& e_orientation, const std::string& b_orientation) {
  if (!(e_max_v_per_cm >= 0.0)) throw Error(ErrorKind::InvalidArgument, "e_max must be >= 0");
  if (!(linewidth_hz > 0.0)) throw Error(ErrorKind::InvalidArgument, "linewidth must be > 0");
  TunabilityReport r;
  r.max_shift_hz =
      std::abs(stark_shift(params, donor, f0_hz, NuclearProjection::averaged(), e_max_v_per_cm));
  r.linewidth_hz = linewidth_hz;
  r.ratio = r.max_shift_hz / linewidth_hz;
  r.e_max_v_per_cm = e_max_v_per_cm;
  r.donor = to_string(donor.name);
  r.e_orientation = e_orientation;
  r.b_orientation = b_orientation;
  r.source = to_string(params.source);
  return r;
}

std::string tunability_json(const TunabilityReport& r) {
  nlohmann::ordered_json j;
  j["donor"] = r.donor;
  j["e_orientation"] = r.e_orientation;
  j["b_orientation"] = r.b_orientation;
  j["source"] = r.source;
  j["e_max_v_per_cm"] = r.e_max_v_per_cm;
  j["max_shift_hz"] = r.max_shift_hz;
  j["linewidth_hz"] = r.linewidth_hz;
  j["ratio"] = r.ratio;
  j["comparison_shift_si_hz"] = r.comparison_shift_si_hz;
  j["comparison_field_si_v_per_cm"] = r.comparison_field_si_v_per_cm;
  return j.dump(2) + "\n";
}

std::string tunability_table(const TunabilityReport& r) {
  std::string out;
  auto row = [&out](const std::string& k, const std::string& v) {
    out += fmt::format("{:<34} {}\n", k, v);
  };
  row("donor", r.donor);
  if (!r.e_orientation.empty()) row("E orientation", r.e_orientation);
  if (!r.b_orientation.empty()) row("B orientation", r.b_orientation);
  row("parameter source", r.source);
  row("max field (V/cm)", fmt::format("{:.6g}", r.e_max_v_per_cm));
  row("max shift (Hz)", fmt::format("{:.6g}", r.max_shift_hz));
  row("ensemble linewidth (Hz)", fmt::format("{:.6g}", r.linewidth_hz));
  row("shift / linewidth", fmt::format("{:.6g}", r.ratio));
  row("Si:Sb reference (Hz @ V/cm)",
      fmt::format("{:.6g} @ {:.6g}", r.comparison_shift_si_hz, r.comparison_field_si_v_per_cm));
  return out;
}

}  // namespace gestark
