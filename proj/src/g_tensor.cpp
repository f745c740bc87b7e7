#include "gestark/g_tensor.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

#include "gestark/constants.hpp"
#include "gestark/error.hpp"

namespace gestark {

namespace {
constexpr double kWeightSumTolerance = 1e-12;
constexpr double kSymmetryTolerance = 1e-12;
}  // namespace

ValleyGTensor::ValleyGTensor(double perp, double par) : g_perp(perp), g_par(par) {
  if (!(perp > 0.0) || !(par > 0.0) || !std::isfinite(perp) || !std::isfinite(par)) {
    throw Error(ErrorKind::InvalidArgument,
                fmt::format("valley g values must be positive (g_perp={}, g_par={})", perp, par));
  }
}

ValleyWeights::ValleyWeights(const std::array<double, ValleySet::count>& alpha) : alpha_(alpha) {
  double sum = 0.0;
  for (double a : alpha) {
    if (!(a >= 0.0 && a <= 1.0)) {
      throw Error(ErrorKind::InvalidWeights, fmt::format("weight {} outside [0,1]", a));
    }
    sum += a;
  }
  if (std::abs(sum - 1.0) > kWeightSumTolerance) {
    throw Error(ErrorKind::InvalidWeights, fmt::format("weights sum to {}, not 1", sum));
  }
}

ValleyWeights ValleyWeights::equal() { return ValleyWeights({0.25, 0.25, 0.25, 0.25}); }

EffectiveGTensor::EffectiveGTensor(const Eigen::Matrix3d& m) : m_(m) {
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > kSymmetryTolerance) {
    throw Error(ErrorKind::AsymmetricTensor, "g-tensor must be symmetric");
  }
}

EffectiveGTensor valley_tensor_in_crystal_frame(const ValleyGTensor& vg, const UnitVector3& axis) {
  const Eigen::Vector3d& n = axis.vec();
  Eigen::Matrix3d m =
      vg.g_perp * Eigen::Matrix3d::Identity() + (vg.g_par - vg.g_perp) * (n * n.transpose());
  // n n^T is symmetric up to rounding in the products; enforce it exactly.
  m = 0.5 * (m + m.transpose()).eval();
  return EffectiveGTensor(m);
}

EffectiveGTensor effective_g_tensor(const ValleyGTensor& vg, const ValleySet& valleys,
                                    const ValleyWeights& w) {
  Eigen::Matrix3d m = Eigen::Matrix3d::Zero();
  for (std::size_t i = 0; i < ValleySet::count; ++i) {
    m += w[i] * valley_tensor_in_crystal_frame(vg, valleys[i]).matrix();
  }
  return EffectiveGTensor(m);
}

double g_along(const EffectiveGTensor& t, const UnitVector3& b_hat) {
  return (t.matrix() * b_hat.vec()).norm();
}

std::array<double, ValleySet::count> g_along_weight_gradient(const ValleyGTensor& vg,
                                                             const ValleySet& valleys,
                                                             const ValleyWeights& w,
                                                             const UnitVector3& b_hat) {
  const Eigen::Vector3d gb = effective_g_tensor(vg, valleys, w).matrix() * b_hat.vec();
  const double norm = gb.norm();
  std::array<double, ValleySet::count> grad{};
  for (std::size_t i = 0; i < ValleySet::count; ++i) {
    const Eigen::Vector3d gib =
        valley_tensor_in_crystal_frame(vg, valleys[i]).matrix() * b_hat.vec();
    grad[i] = gb.dot(gib) / norm;
  }
  return grad;
}

double resonance_frequency(double g, double b0_tesla) {
  return g * constants::bohr_magneton * b0_tesla / constants::planck;
}

double resonance_field(double g, double frequency_hz) {
  if (!(g > 0.0)) throw Error(ErrorKind::InvalidArgument, "g must be positive");
  return frequency_hz * constants::planck / (g * constants::bohr_magneton);
}

ValleyWeights repopulation_weights(const RepopulationModel& model, const UnitVector3& e_hat,
                                   double e_v_per_um, const ValleySet& valleys) {
  if (e_v_per_um == 0.0) return ValleyWeights::equal();
  const double e2 = e_v_per_um * e_v_per_um;
  std::array<double, ValleySet::count> alpha{};
  double sum = 0.0;
  for (std::size_t i = 0; i < ValleySet::count; ++i) {
    const double bracket = projection_squared(e_hat, valleys[i]) - 1.0 / 3.0;
    alpha[i] = std::clamp(0.25 + model.kappa * bracket * e2, 0.0, 1.0);
    sum += alpha[i];
  }
  if (!(sum > 0.0)) {
    throw Error(ErrorKind::InvalidWeights, "repopulation emptied every valley");
  }
  for (double& a : alpha) a /= sum;

  // Rounding in the <100> projections leaves the bracket at ~1e-17; snap to
  // the exact symmetric point so the equal-angle case is bit-exact.
  bool symmetric = true;
  for (std::size_t i = 1; i < ValleySet::count; ++i) {
    symmetric = symmetric && std::abs(projection_squared(e_hat, valleys[i]) -
                                      projection_squared(e_hat, valleys[0])) < 1e-15;
  }
  if (symmetric) return ValleyWeights::equal();
  return ValleyWeights(alpha);
}

double repopulation_shift(const RepopulationModel& model, const ValleyGTensor& vg,
                          const ValleySet& valleys, const UnitVector3& e_hat,
                          const UnitVector3& b_hat, double e_v_per_um, double f0_hz) {
  const double g0 = g_along(effective_g_tensor(vg, valleys, ValleyWeights::equal()), b_hat);
  const auto w = repopulation_weights(model, e_hat, e_v_per_um, valleys);
  const double g = g_along(effective_g_tensor(vg, valleys, w), b_hat);
  // The spectrometer frequency fixes mu_B B0 / h = f0 / g0.
  return (g - g0) * f0_hz / g0;
}

RepopulationModel calibrate_repopulation(double eta_g, const ValleyGTensor& vg,
                                         const ValleySet& valleys, const CalibrationOptions& opts) {
  const double e = opts.reference_field_v_per_um;
  if (!(e > 0.0)) throw Error(ErrorKind::InvalidArgument, "reference field must be positive");
  const double e2 = e * e;
  const auto axis = UnitVector3::normalize({1.0, 1.0, 1.0});

  // Fractional g change at the reference point; f0 cancels.
  auto residual = [&](double kappa) {
    return repopulation_shift({kappa}, vg, valleys, axis, axis, e, 1.0) - eta_g * e2;
  };

  // Largest |kappa| for which no weight clamps with E along a valley axis:
  // the aligned valley moves by +2/3 kappa E^2, the others by -2/9 kappa E^2.
  double lo = -0.375 / e2;
  double hi = 1.125 / e2;
  double f_lo = residual(lo);
  double f_hi = residual(hi);
  if (f_lo * f_hi > 0.0) {
    throw Error(ErrorKind::CalibrationFailed,
                fmt::format("eta_g={} is outside the range reachable by valley repopulation "
                            "at E={} V/um",
                            eta_g, e));
  }
  for (int it = 0; it < opts.max_iterations; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = residual(mid);
    if (f_mid == 0.0) return {mid};
    if ((f_lo < 0.0) == (f_mid < 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
    if (hi - lo <= opts.relative_tolerance * std::max(std::abs(lo), std::abs(hi))) break;
  }
  return {0.5 * (lo + hi)};
}

}  // namespace gestark
