#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "gestark/geometry.hpp"
#include "gestark/stark.hpp"

namespace gestark {

/// One row of the measured/theoretical Stark parameter table. Every value
/// is optional; a missing entry is "not measured", never zero.
struct RegistryEntry {
  Donor donor;
  MillerDirection e_direction;
  Geometry geometry;
  MillerDirection b_direction;
  std::optional<double> eta_g_exp;
  std::optional<double> eta_g_exp_err;
  std::optional<double> eta_g_theory;
  std::optional<double> eta_a_exp;
  std::optional<double> eta_a_exp_err;
  std::optional<double> eta_a_theory;
  // Derived from a quoted shift rather than measured or computed.
  std::optional<double> eta_g_inferred;
  std::string note;

  bool matches(Donor d, const MillerDirection& e, Geometry g, const MillerDirection& b) const;
  /// Parameters for one source, or nullopt when that source has no values.
  std::optional<StarkParameters> parameters(ParameterSource source) const;
};

/// Immutable after construction.
class StarkRegistry {
 public:
  explicit StarkRegistry(std::vector<RegistryEntry> entries);

  /// Germanium donor table: nine measured rows with their theory values,
  /// plus the P E||B||[111] value inferred from the quoted 4.2 MHz shift.
  static StarkRegistry builtin();
  static StarkRegistry load(const std::filesystem::path& path);
  static StarkRegistry from_json(const std::string& text);
  std::string to_json() const;

  /// Path of the table shipped in the source tree.
  static std::filesystem::path bundled_path();

  const std::vector<RegistryEntry>& entries() const noexcept { return entries_; }

  /// Exact-row match on canonical, sign-folded directions and the
  /// parallel/perpendicular classification. Throws UnknownOrientation when no
  /// row exists; returns nullopt when the row exists but `source` has no
  /// values for it.
  std::optional<StarkParameters> lookup(Donor donor, const MillerDirection& e_dir,
                                        const MillerDirection& b_dir, ParameterSource source) const;

  const RegistryEntry& row(Donor donor, const MillerDirection& e_dir,
                           const MillerDirection& b_dir) const;

 private:
  std::vector<RegistryEntry> entries_;
};

}  // namespace gestark
