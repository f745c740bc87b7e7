#include "gestark/fitting.hpp"

#include <fmt/format.h>

#include <Eigen/QR>
#include <algorithm>
#include <cmath>
#include <json.hpp>
#include <map>
#include <set>

#include "gestark/constants.hpp"
#include "gestark/error.hpp"

namespace gestark {

const char* to_string(FitMode m) {
  return m == FitMode::BipolarQuadratic ? "bipolar_quadratic" : "unipolar_with_linear";
}

const char* to_string(Weighting w) {
  return w == Weighting::Uniform ? "uniform" : "inverse_variance";
}

FitMode parse_fit_mode(const std::string& s) {
  if (s == "bipolar_quadratic") return FitMode::BipolarQuadratic;
  if (s == "unipolar_with_linear") return FitMode::UnipolarWithLinear;
  throw Error(ErrorKind::Config,
              fmt::format("unknown fit mode '{}' (bipolar_quadratic|unipolar_with_linear)", s));
}

Weighting parse_weighting(const std::string& s) {
  if (s == "uniform") return Weighting::Uniform;
  if (s == "inverse_variance") return Weighting::InverseVariance;
  throw Error(ErrorKind::Config,
              fmt::format("unknown weighting '{}' (uniform|inverse_variance)", s));
}

namespace {

enum Column { kQuadratic, kHyperfine, kLinear, kIntercept };

}  // namespace

FitResult global_fit(const EchoPhaseDataset& data, const DonorSpecies& donor, double f0_hz,
                     const FitOptions& opts) {
  if (!(f0_hz > 0.0)) throw Error(ErrorKind::InvalidArgument, "f0 must be positive");

  std::set<double> fields;
  std::set<int> projections;
  for (const auto& r : data.rows) {
    fields.insert(std::abs(r.e_v_per_cm));
    if (!r.m_i.is_averaged()) projections.insert(r.m_i.twice());
    if (opts.weighting == Weighting::InverseVariance && !(r.sigma_hz > 0.0)) {
      throw Error(ErrorKind::InvalidArgument,
                  "inverse-variance weighting needs positive sigma_hz on every row");
    }
  }
  if (fields.size() < 3) {
    throw Error(ErrorKind::RankDeficient,
                fmt::format("need at least 3 distinct field values, got {}", fields.size()));
  }
  if (opts.fit_hyperfine) {
    if (projections.size() < 2) {
      throw Error(ErrorKind::RankDeficient,
                  "fitting eta_A needs at least two distinct hyperfine lines");
    }
    if (!donor.hyperfine_a_hz) {
      throw Error(ErrorKind::MissingA,
                  fmt::format("hyperfine constant A for {} is not set", to_string(donor.name)));
    }
  }

  std::vector<Column> columns{kQuadratic};
  if (opts.fit_hyperfine) columns.push_back(kHyperfine);
  if (opts.mode == FitMode::UnipolarWithLinear) columns.push_back(kLinear);
  if (opts.intercept) columns.push_back(kIntercept);

  const auto n = static_cast<Eigen::Index>(data.rows.size());
  const auto p = static_cast<Eigen::Index>(columns.size());
  if (n <= p) {
    throw Error(ErrorKind::RankDeficient,
                fmt::format("{} rows leave no degrees of freedom for {} parameters", n, p));
  }

  constexpr double scale2 = constants::v_per_cm_to_v_per_um * constants::v_per_cm_to_v_per_um;
  Eigen::MatrixXd design(n, p);
  Eigen::VectorXd y(n);
  Eigen::VectorXd weight = Eigen::VectorXd::Ones(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& r = data.rows[static_cast<std::size_t>(i)];
    const double e2 = r.e_v_per_cm * r.e_v_per_cm * scale2;
    for (Eigen::Index c = 0; c < p; ++c) {
      switch (columns[static_cast<std::size_t>(c)]) {
        case kQuadratic:
          design(i, c) = e2;
          break;
        case kHyperfine:
          design(i, c) = r.m_i.value() * e2;
          break;
        case kLinear:
          design(i, c) = r.e_v_per_cm;
          break;
        case kIntercept:
          design(i, c) = 1.0;
          break;
      }
    }
    y(i) = r.df_hz;
    if (opts.weighting == Weighting::InverseVariance) weight(i) = 1.0 / r.sigma_hz;
  }

  // Equilibrate columns so rank detection and conditioning do not depend on
  // the units of each regressor.
  Eigen::MatrixXd weighted = weight.asDiagonal() * design;
  const Eigen::VectorXd col_norm = weighted.colwise().norm().transpose();
  for (Eigen::Index c = 0; c < p; ++c) {
    if (!(col_norm(c) > 0.0)) {
      throw Error(ErrorKind::RankDeficient, "a design column is identically zero");
    }
  }
  weighted = weighted * col_norm.cwiseInverse().asDiagonal();

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(weighted);
  qr.setThreshold(1e-10);
  if (qr.rank() < p) {
    throw Error(ErrorKind::RankDeficient,
                fmt::format("design matrix rank {} < {} parameters", qr.rank(), p));
  }
  const Eigen::VectorXd scaled_coeff = qr.solve(weight.asDiagonal() * y);
  const Eigen::VectorXd coeff = col_norm.cwiseInverse().asDiagonal() * scaled_coeff;

  // (A^T A)^-1 = P R^-1 R^-T P^T for A P = Q R.
  const Eigen::MatrixXd r_upper =
      qr.matrixR().topLeftCorner(p, p).template triangularView<Eigen::Upper>();
  const Eigen::MatrixXd r_inv =
      r_upper.triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(p, p));
  Eigen::MatrixXd unscaled = r_inv * r_inv.transpose();
  unscaled = qr.colsPermutation() * unscaled * qr.colsPermutation().transpose();
  Eigen::MatrixXd cov =
      col_norm.cwiseInverse().asDiagonal() * unscaled * col_norm.cwiseInverse().asDiagonal();

  FitResult result;
  result.dof = static_cast<int>(n - p);
  const Eigen::VectorXd residuals = y - design * coeff;
  result.residuals.assign(residuals.data(), residuals.data() + n);

  double chi2 = 0.0;
  double rss = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    rss += residuals(i) * residuals(i);
    const double sigma = data.rows[static_cast<std::size_t>(i)].sigma_hz;
    if (sigma > 0.0) chi2 += (residuals(i) / sigma) * (residuals(i) / sigma);
  }
  result.chi2_reduced = chi2 / result.dof;
  if (opts.weighting == Weighting::Uniform) cov *= rss / result.dof;
  result.coefficient_covariance = cov;

  for (Eigen::Index c = 0; c < p; ++c) {
    const double value = coeff(c);
    const double error = std::sqrt(std::max(0.0, cov(c, c)));
    switch (columns[static_cast<std::size_t>(c)]) {
      case kQuadratic:
        result.eta_g = Estimate{value / f0_hz, error / f0_hz};
        break;
      case kHyperfine: {
        const double a = *donor.hyperfine_a_hz;
        result.eta_a = Estimate{value / a, error / std::abs(a)};
        break;
      }
      case kLinear:
        result.linear = Estimate{value, error};
        break;
      case kIntercept:
        result.intercept = Estimate{value, error};
        break;
    }
  }
  return result;
}

EchoPhaseDataset average_opposite_lines(const EchoPhaseDataset& data) {
  EchoPhaseDataset out;
  out.metadata = data.metadata;
  out.warnings = data.warnings;

  // Field values in order of first appearance; rows keyed by (field, 2 M_I).
  std::vector<double> order;
  std::map<std::pair<double, int>, const EchoPhaseRow*> lines;
  std::map<double, std::vector<const EchoPhaseRow*>> averaged;
  for (const auto& r : data.rows) {
    if (std::find(order.begin(), order.end(), r.e_v_per_cm) == order.end()) {
      order.push_back(r.e_v_per_cm);
    }
    if (r.m_i.is_averaged()) {
      averaged[r.e_v_per_cm].push_back(&r);
      continue;
    }
    if (!lines.emplace(std::pair{r.e_v_per_cm, r.m_i.twice()}, &r).second) {
      throw Error(ErrorKind::UnpairedLines,
                  fmt::format("duplicate line M_I={} at E={} V/cm", r.m_i.label(), r.e_v_per_cm));
    }
  }
  for (const auto& [key, row] : lines) {
    if (!lines.count({key.first, -key.second})) {
      throw Error(ErrorKind::UnpairedLines, fmt::format("M_I={} at E={} V/cm has no opposite line",
                                                        row->m_i.label(), key.first));
    }
  }

  for (double e : order) {
    for (const EchoPhaseRow* r : averaged[e]) out.rows.push_back(*r);
    for (auto it = lines.lower_bound({e, 0}); it != lines.end() && it->first.first == e; ++it) {
      const EchoPhaseRow& plus = *it->second;
      if (it->first.second == 0) {
        out.rows.push_back({e, NuclearProjection::averaged(), plus.df_hz, plus.sigma_hz});
        continue;
      }
      const EchoPhaseRow& minus = *lines.at({e, -it->first.second});
      out.rows.push_back({e, NuclearProjection::averaged(), 0.5 * (plus.df_hz + minus.df_hz),
                          0.5 * std::hypot(plus.sigma_hz, minus.sigma_hz)});
    }
  }
  return out;
}

std::string fit_result_json(const FitResult& r) {
  nlohmann::ordered_json j;
  auto put = [&j](const char* key, const std::optional<Estimate>& e) {
    const std::string err = std::string(key) + "_err";
    if (e) {
      j[key] = e->value;
      j[err] = e->error;
    } else {
      j[key] = nullptr;
      j[err] = nullptr;
    }
  };
  put("eta_g", r.eta_g);
  put("eta_a", r.eta_a);
  put("linear", r.linear);
  j["chi2_reduced"] = r.chi2_reduced;
  j["dof"] = r.dof;
  if (r.intercept) put("intercept", r.intercept);
  return j.dump(2) + "\n";
}

}  // namespace gestark
