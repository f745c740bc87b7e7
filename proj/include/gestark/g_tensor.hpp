#pragma once

#include <Eigen/Core>
#include <array>

#include "gestark/geometry.hpp"

namespace gestark {

/// Axially symmetric g-tensor of a single valley, expressed in the valley
/// frame: g_perp across the valley axis and g_par along it.
struct ValleyGTensor {
  double g_perp;
  double g_par;

  ValleyGTensor(double g_perp, double g_par);

  static ValleyGTensor arsenic() { return {1.92, 0.82}; }
  static ValleyGTensor phosphorus() { return {1.93, 0.83}; }

  /// (2 g_perp + g_par) / 3, the equal-population average.
  double isotropic_average() const noexcept { return (2.0 * g_perp + g_par) / 3.0; }
};

/// Valley occupation amplitudes alpha_i. Each in [0,1], summing to 1.
class ValleyWeights {
 public:
  explicit ValleyWeights(const std::array<double, ValleySet::count>& alpha);
  static ValleyWeights equal();

  const std::array<double, ValleySet::count>& alpha() const noexcept { return alpha_; }
  double operator[](std::size_t i) const { return alpha_[i]; }

 private:
  std::array<double, ValleySet::count> alpha_;
};

/// Symmetric 3x3 g-tensor in the crystal frame.
class EffectiveGTensor {
 public:
  /// Throws AsymmetricTensor unless m is symmetric within 1e-12.
  explicit EffectiveGTensor(const Eigen::Matrix3d& m);
  const Eigen::Matrix3d& matrix() const noexcept { return m_; }

 private:
  Eigen::Matrix3d m_;
};

/// Quadratic valley-repopulation coupling, kappa in um^2/V^2.
struct RepopulationModel {
  double kappa = 0.0;
};

EffectiveGTensor valley_tensor_in_crystal_frame(const ValleyGTensor& vg, const UnitVector3& axis);

EffectiveGTensor effective_g_tensor(const ValleyGTensor& vg, const ValleySet& valleys,
                                    const ValleyWeights& w);

/// Effective g for resonance with the static field along b_hat: |g b_hat|.
double g_along(const EffectiveGTensor& t, const UnitVector3& b_hat);

/// d g_along / d alpha_i for each valley, holding the other weights fixed.
std::array<double, ValleySet::count> g_along_weight_gradient(const ValleyGTensor& vg,
                                                             const ValleySet& valleys,
                                                             const ValleyWeights& w,
                                                             const UnitVector3& b_hat);

/// f = g * mu_B * B0 / h, in Hz.
double resonance_frequency(double g, double b0_tesla);

/// Inverse of resonance_frequency: the field that puts g on resonance at f.
double resonance_field(double g, double frequency_hz);

/// alpha_i = clamp(1/4 + kappa [(e.n_i)^2 - 1/3] E^2, 0, 1), renormalized.
/// E in V/um. Exactly (1/4, 1/4, 1/4, 1/4) at E = 0 and for E along <100>.
ValleyWeights repopulation_weights(const RepopulationModel& model, const UnitVector3& e_hat,
                                   double e_v_per_um, const ValleySet& valleys);

/// Frequency shift (Hz) predicted by valley repopulation alone, relative to
/// the zero-field resonance, for a spectrometer held at f0_hz.
double repopulation_shift(const RepopulationModel& model, const ValleyGTensor& vg,
                          const ValleySet& valleys, const UnitVector3& e_hat,
                          const UnitVector3& b_hat, double e_v_per_um, double f0_hz);

struct CalibrationOptions {
  double reference_field_v_per_um = 1.0e-2;
  double relative_tolerance = 1.0e-10;
  int max_iterations = 400;
};

/// Finds kappa such that the repopulation shift for E || B || [111] at the
/// reference field equals eta_g * f0 * E^2, solving by bisection.
/// Throws CalibrationFailed if no bracket exists within the unclamped range.
RepopulationModel calibrate_repopulation(double eta_g, const ValleyGTensor& vg,
                                         const ValleySet& valleys,
                                         const CalibrationOptions& opts = {});

}  // namespace gestark
