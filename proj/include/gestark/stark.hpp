#pragma once

#include <optional>
#include <string>

#include "gestark/geometry.hpp"

namespace gestark {

enum class Donor { As75, P31 };

const char* to_string(Donor d);
/// Accepts "As75", "As", "75As", "P31", "P", "31P".
Donor parse_donor(const std::string& s);

/// Nuclear spin projection M_I stored as twice its value, or the
/// "averaged" sentinel for a shift averaged over opposite hyperfine lines.
class NuclearProjection {
 public:
  static NuclearProjection from_twice(int twice_m) { return NuclearProjection(twice_m, false); }
  static NuclearProjection averaged() { return NuclearProjection(0, true); }
  /// Parses "3/2", "-1/2", "1.5", "0" or "avg".
  static NuclearProjection parse(const std::string& s);

  bool is_averaged() const noexcept { return averaged_; }
  int twice() const noexcept { return twice_; }
  /// 0 for the averaged sentinel.
  double value() const noexcept { return averaged_ ? 0.0 : 0.5 * twice_; }
  /// "avg", "0", "1/2", "-3/2", ...
  std::string label() const;

  friend bool operator==(const NuclearProjection&, const NuclearProjection&) = default;
  friend auto operator<=>(const NuclearProjection& a, const NuclearProjection& b) {
    if (a.averaged_ != b.averaged_) return a.averaged_ <=> b.averaged_;
    return a.twice_ <=> b.twice_;
  }

 private:
  NuclearProjection(int twice, bool averaged) : twice_(twice), averaged_(averaged) {}
  int twice_;
  bool averaged_;
};

struct DonorSpecies {
  Donor name;
  double g0;
  int twice_nuclear_spin;
  std::optional<double> hyperfine_a_hz;  // no default: not known for Ge hosts

  /// Isotropic g and nuclear spin of the species; A left unset.
  static DonorSpecies standard(Donor d);

  double nuclear_spin() const noexcept { return 0.5 * twice_nuclear_spin; }
  /// Throws InvalidProjection unless m is an allowed M_I (or averaged).
  void check_projection(const NuclearProjection& m) const;
};

enum class ParameterSource { Experiment, Theory, Inferred };

const char* to_string(ParameterSource s);
ParameterSource parse_source(const std::string& s);

/// Stark parameters in um^2/V^2. Absent values are distinct from zero.
struct StarkParameters {
  std::optional<double> eta_g;
  std::optional<double> eta_a;
  ParameterSource source = ParameterSource::Experiment;
};

enum class Polarity { Unipolar, Bipolar };

const char* to_string(Polarity p);
Polarity parse_polarity(const std::string& s);

struct FieldConfiguration {
  MillerDirection e_direction{0, 0, 1};
  double e_magnitude_v_per_cm = 0.0;
  Polarity polarity = Polarity::Bipolar;
  MillerDirection b_direction{0, 0, 1};
  double f0_hz = 9.6e9;
};

/// Strain as an effective internal field collinear with the applied field.
struct StrainConfiguration {
  double e_internal_v_per_cm = 0.0;
};

/// Coefficient of E^2 (E in V/um) for one line, in Hz: eta_g f0 + eta_A A m.
/// Validates m and the availability of every parameter it needs.
double shift_coefficient(const StarkParameters& p, const DonorSpecies& donor, double f0_hz,
                         const NuclearProjection& m);

/// Quadratic Stark shift, in Hz:
///   df = (eta_g f0 + eta_a A m) E^2,  E converted from V/cm to V/um.
/// The sign of E is irrelevant. For the averaged projection only the
/// spin-orbit term is evaluated.
double stark_shift(const StarkParameters& p, const DonorSpecies& donor, double f0_hz,
                   const NuclearProjection& m, double e_v_per_cm);

/// stark_shift with E replaced by (E_int + E_ext).
double shift_with_strain(const StarkParameters& p, const DonorSpecies& donor, double f0_hz,
                         const NuclearProjection& m, double e_ext_v_per_cm,
                         const StrainConfiguration& strain);

/// Mean of the +E_ext and -E_ext halves of an ideal bipolar pulse. The
/// E_int * E_ext cross term cancels exactly.
double bipolar_effective_shift(const StarkParameters& p, const DonorSpecies& donor, double f0_hz,
                               const NuclearProjection& m, double e_ext_v_per_cm,
                               const StrainConfiguration& strain);

/// Dispatches to bipolar_effective_shift or shift_with_strain.
double applied_shift(Polarity polarity, const StarkParameters& p, const DonorSpecies& donor,
                     double f0_hz, const NuclearProjection& m, double e_ext_v_per_cm,
                     const StrainConfiguration& strain);

}  // namespace gestark
