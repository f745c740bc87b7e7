#pragma once

#include <Eigen/Core>
#include <optional>
#include <string>
#include <vector>

#include "gestark/experiment.hpp"
#include "gestark/stark.hpp"

namespace gestark {

enum class FitMode { BipolarQuadratic, UnipolarWithLinear };
enum class Weighting { Uniform, InverseVariance };

const char* to_string(FitMode m);
const char* to_string(Weighting w);
FitMode parse_fit_mode(const std::string& s);
Weighting parse_weighting(const std::string& s);

struct FitOptions {
  FitMode mode = FitMode::BipolarQuadratic;
  Weighting weighting = Weighting::InverseVariance;
  bool fit_hyperfine = true;
  /// Adds a constant column; absorbs the eta E_int^2 strain offset.
  bool intercept = false;
};

struct Estimate {
  double value;
  double error;
};

struct FitResult {
  std::optional<Estimate> eta_g;      // um^2/V^2
  std::optional<Estimate> eta_a;      // um^2/V^2
  std::optional<Estimate> linear;     // Hz cm/V
  std::optional<Estimate> intercept;  // Hz
  double chi2_reduced = 0.0;
  int dof = 0;
  std::vector<double> residuals;  // Hz, data - model, in row order
  /// Covariance of the fitted coefficients in the column order
  /// (E^2, M_I E^2, E, 1), restricted to the columns in use. Units follow the
  /// raw coefficients (Hz per (V/um)^2, Hz per V/cm, Hz).
  Eigen::MatrixXd coefficient_covariance;
};

/// Weighted linear least squares of
///   df = a E^2 + b M_I E^2 [+ c E] [+ d],   E^2 in (V/um)^2, E in V/cm,
/// with eta_g = a / f0 and eta_A = b / A. Solved by column-pivoted
/// Householder QR on column-equilibrated data. Uniform weighting scales the
/// covariance by the residual variance; inverse-variance weighting uses the
/// row sigmas as absolute errors.
FitResult global_fit(const EchoPhaseDataset& data, const DonorSpecies& donor, double f0_hz,
                     const FitOptions& opts);

/// Replaces each +M_I / -M_I pair at a common field by its mean. The
/// result carries the averaged M_I sentinel and sigma = sqrt(s1^2 + s2^2) / 2.
/// Rows already averaged pass through. Throws UnpairedLines.
EchoPhaseDataset average_opposite_lines(const EchoPhaseDataset& data);

/// {eta_g, eta_g_err, eta_a, eta_a_err, linear, linear_err, chi2_reduced,
/// dof}; absent values are null. Intercept fields appear only when fitted.
std::string fit_result_json(const FitResult& r);

}  // namespace gestark
