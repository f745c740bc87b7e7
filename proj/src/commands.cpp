#include "gestark/commands.hpp"

#include <fmt/format.h>

#include <Eigen/Eigenvalues>
#include <cmath>
#include <json.hpp>
#include <numeric>

#include "gestark/addressability.hpp"
#include "gestark/constants.hpp"
#include "gestark/dataset_io.hpp"
#include "gestark/error.hpp"
#include "gestark/kernels.hpp"

namespace gestark {

using ojson = nlohmann::ordered_json;

OutputFormat parse_format(const std::string& s) {
  if (s == "csv") return OutputFormat::Csv;
  if (s == "json") return OutputFormat::Json;
  if (s == "table") return OutputFormat::Table;
  throw Error(ErrorKind::Config, fmt::format("unknown format '{}' (csv|json|table)", s));
}

namespace {

ojson nullable(const std::optional<double>& v) { return v ? ojson(*v) : ojson(nullptr); }

// Lines whose shift can be evaluated: every M_I when eta_A and A are both
// known, then the line average.
std::vector<NuclearProjection> reportable_lines(const DonorSpecies& donor, const StarkParameters& p,
                                                std::vector<std::string>& warnings) {
  std::vector<NuclearProjection> lines;
  if (p.eta_a && donor.hyperfine_a_hz) {
    lines = hyperfine_projections(donor);
  } else if (p.eta_a) {
    warnings.push_back(
        "per-line shifts need donor.hyperfine_a_hz; reporting the line-averaged shift only");
  }
  lines.push_back(NuclearProjection::averaged());
  return lines;
}

}  // namespace

CommandOutput cmd_shift(const RunConfig& cfg, const StarkRegistry& registry,
                        std::optional<OutputFormat> format) {
  if (!cfg.field.e_magnitude_v_per_cm) {
    throw Error(ErrorKind::Config, "config: /field/e_magnitude_v_per_cm is required for shift");
  }
  const double e = *cfg.field.e_magnitude_v_per_cm;
  const auto donor = cfg.donor_species();
  const auto params = cfg.stark_parameters(registry);
  const double f0 = cfg.f0_hz();

  CommandOutput out;
  const auto lines = reportable_lines(donor, params, out.warnings);
  std::vector<double> shifts;
  for (const auto& m : lines) {
    shifts.push_back(applied_shift(cfg.field.polarity, params, donor, f0, m, e, cfg.strain));
  }

  const OutputFormat f = format.value_or(OutputFormat::Table);
  if (f == OutputFormat::Csv) {
    out.text = "m_i,e_field_v_per_cm,delta_f_hz\n";
    for (std::size_t i = 0; i < lines.size(); ++i) {
      out.text += fmt::format("{},{},{}\n", lines[i].label(), e, shifts[i]);
    }
  } else if (f == OutputFormat::Json) {
    ojson j;
    j["donor"] = to_string(donor.name);
    j["e_direction"] = cfg.field.e_direction.label();
    j["b_direction"] = cfg.field.b_direction.label();
    j["e_field_v_per_cm"] = e;
    j["f0_hz"] = f0;
    j["eta_g_um2_per_v2"] = nullable(params.eta_g);
    j["eta_a_um2_per_v2"] = nullable(params.eta_a);
    j["source"] = to_string(params.source);
    j["lines"] = ojson::array();
    for (std::size_t i = 0; i + 1 < lines.size(); ++i) {
      j["lines"].push_back({{"m_i", lines[i].label()}, {"delta_f_hz", shifts[i]}});
    }
    j["averaged_delta_f_hz"] = shifts.back();
    out.text = j.dump(2) + "\n";
  } else {
    out.text = fmt::format(
        "{} E={} B={} ({})  E = {} V/cm  f0 = {} Hz  source = {}\n", to_string(donor.name),
        cfg.field.e_direction.label(), cfg.field.b_direction.label(),
        to_string(classify_geometry(cfg.field.e_direction, cfg.field.b_direction)), e, f0,
        to_string(params.source));
    out.text += fmt::format("{:>6}  {:>16}\n", "M_I", "delta_f (Hz)");
    for (std::size_t i = 0; i < lines.size(); ++i) {
      out.text += fmt::format("{:>6}  {:>16.6f}\n", lines[i].label(), shifts[i]);
    }
  }
  return out;
}

namespace {

RepopulationModel angle_model(const RunConfig& cfg, const StarkRegistry& registry,
                              const ValleyGTensor& vg) {
  if (cfg.gtensor && cfg.gtensor->kappa) return {*cfg.gtensor->kappa};
  if (cfg.gtensor && cfg.gtensor->calibrate) {
    const auto p = cfg.stark_parameters(registry);
    if (!p.eta_g) throw Error(ErrorKind::Config, "calibration needs eta_g");
    return calibrate_repopulation(*p.eta_g, vg, ValleySet::germanium());
  }
  throw Error(ErrorKind::Config,
              "config: /gtensor: an angle sweep needs gtensor.kappa or gtensor.calibrate");
}

Eigen::Vector3d rotate(const Eigen::Vector3d& v, const Eigen::Vector3d& axis, double angle) {
  return v * std::cos(angle) + axis.cross(v) * std::sin(angle) +
         axis * axis.dot(v) * (1.0 - std::cos(angle));
}

}  // namespace

CommandOutput cmd_sweep(const RunConfig& cfg, const StarkRegistry& registry,
                        std::optional<OutputFormat> format,
                        const std::optional<std::filesystem::path>& out_path) {
  if (cfg.field.sweep_v_per_cm.empty()) {
    throw Error(ErrorKind::EmptySweep, "config: /field/sweep_v_per_cm is empty or missing");
  }
  if (format && *format != OutputFormat::Csv) {
    throw Error(ErrorKind::Config, "sweep writes CSV only");
  }
  const auto donor = cfg.donor_species();
  const auto params = cfg.stark_parameters(registry);
  const double f0 = cfg.f0_hz();

  CommandOutput out;
  const auto lines = reportable_lines(donor, params, out.warnings);
  kernels::SynthesisPlan plan;
  plan.sweep_v_per_cm = cfg.field.sweep_v_per_cm;
  plan.lines = lines;
  for (const auto& m : lines)
    plan.line_coefficients.push_back(shift_coefficient(params, donor, f0, m));
  plan.e_internal_v_per_cm = cfg.strain.e_internal_v_per_cm;
  plan.polarity = cfg.field.polarity;
  const auto table = kernels::omp::evaluate_shifts(plan);

  std::string csv = "e_field_v_per_cm";
  for (const auto& m : lines) {
    csv += m.is_averaged() ? ",delta_f_avg_hz" : fmt::format(",delta_f_hz_m{}", m.label());
  }
  csv += "\n";
  for (std::size_t i = 0; i < plan.sweep_v_per_cm.size(); ++i) {
    csv += fmt::format("{}", plan.sweep_v_per_cm[i]);
    for (std::size_t j = 0; j < lines.size(); ++j) {
      csv += fmt::format(",{}", table.values[i * lines.size() + j]);
    }
    csv += "\n";
  }

  std::string angle_csv;
  if (cfg.angle_sweep) {
    const auto vg = cfg.valley_g_tensor();
    const auto model = angle_model(cfg, registry, vg);
    const auto e_hat = to_unit_vector(cfg.field.e_direction);
    const auto b0 = to_unit_vector(cfg.field.b_direction).vec();
    const auto axis = to_unit_vector(cfg.angle_sweep->rotation_axis).vec();
    const auto& angles = cfg.angle_sweep->angles_deg;
    const auto& fields = cfg.field.sweep_v_per_cm;
    std::vector<double> values(angles.size() * fields.size());
    const auto n = static_cast<std::ptrdiff_t>(values.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t r = 0; r < n; ++r) {
      const auto u = static_cast<std::size_t>(r);
      const double theta = angles[u / fields.size()] * constants::pi / 180.0;
      const auto b_hat = UnitVector3::normalize(rotate(b0, axis, theta));
      values[u] =
          repopulation_shift(model, vg, ValleySet::germanium(), e_hat, b_hat,
                             fields[u % fields.size()] * constants::v_per_cm_to_v_per_um, f0);
    }
    angle_csv = "angle_deg,e_field_v_per_cm,delta_f_repopulation_hz\n";
    for (std::size_t r = 0; r < values.size(); ++r) {
      angle_csv += fmt::format("{},{},{}\n", angles[r / fields.size()], fields[r % fields.size()],
                               values[r]);
    }
    if (!out_path) {
      csv += "\n" + angle_csv;
    }
  }

  if (out_path) {
    out.files.emplace_back(*out_path, csv);
    if (!angle_csv.empty()) {
      auto angle_path = *out_path;
      angle_path.replace_extension(".angles.csv");
      out.files.emplace_back(angle_path, angle_csv);
    }
  } else {
    out.text = csv;
  }
  return out;
}

CommandOutput cmd_simulate(const RunConfig& cfg, const StarkRegistry& registry,
                           std::optional<OutputFormat> format,
                           const std::optional<std::filesystem::path>& out_path) {
  if (format && *format != OutputFormat::Csv) {
    throw Error(ErrorKind::Config, "simulate writes CSV plus a JSON sidecar only");
  }
  std::vector<double> sweep = cfg.field.sweep_v_per_cm;
  if (sweep.empty() && cfg.field.e_magnitude_v_per_cm) sweep = {*cfg.field.e_magnitude_v_per_cm};
  if (sweep.empty()) throw Error(ErrorKind::EmptySweep, "config: /field/sweep_v_per_cm is empty");
  const auto donor = cfg.donor_species();
  const auto params = cfg.stark_parameters(registry);
  const auto data = generate_dataset(donor, params, sweep, cfg.field_configuration(), cfg.sequence,
                                     cfg.noise, cfg.strain);
  CommandOutput out;
  out.warnings = data.warnings;
  if (out_path) {
    out.files.emplace_back(*out_path, dataset_csv(data));
    out.files.emplace_back(sidecar_path(*out_path), metadata_json(data));
  } else {
    out.text = dataset_csv(data);
  }
  return out;
}

CommandOutput cmd_fit(const RunConfig& cfg, const std::filesystem::path& dataset,
                      std::optional<OutputFormat> format,
                      const std::optional<std::filesystem::path>& out_path) {
  const auto data = load_dataset(dataset);
  const auto donor = cfg.donor_species();
  const double f0 = cfg.f0_hz();
  CommandOutput out;
  if (data.metadata.f0_hz > 0.0 && std::abs(data.metadata.f0_hz - f0) > 1e-9 * f0) {
    out.warnings.push_back(fmt::format(
        "dataset f0 {} Hz differs from config f0 {} Hz; using config", data.metadata.f0_hz, f0));
  }
  const auto result = global_fit(data, donor, f0, cfg.fit);

  std::string text;
  if (format.value_or(OutputFormat::Json) == OutputFormat::Json) {
    text = fit_result_json(result);
  } else if (*format == OutputFormat::Table) {
    auto row = [&text](const char* name, const char* unit, const std::optional<Estimate>& e) {
      if (e) {
        text += fmt::format("{:<10} {:>14.6e} +- {:<12.3e} {}\n", name, e->value, e->error, unit);
      } else {
        text += fmt::format("{:<10} {:>14} {:<15} {}\n", name, "-", "", unit);
      }
    };
    row("eta_g", "um^2/V^2", result.eta_g);
    row("eta_a", "um^2/V^2", result.eta_a);
    row("linear", "Hz cm/V", result.linear);
    if (result.intercept) row("intercept", "Hz", result.intercept);
    text += fmt::format("{:<10} {:>14.6g}\n{:<10} {:>14}\n", "chi2_red", result.chi2_reduced, "dof",
                        result.dof);
  } else {
    text = "parameter,value,error\n";
    auto row = [&text](const char* name, const std::optional<Estimate>& e) {
      if (e) text += fmt::format("{},{},{}\n", name, e->value, e->error);
    };
    row("eta_g_um2_per_v2", result.eta_g);
    row("eta_a_um2_per_v2", result.eta_a);
    row("linear_hz_cm_per_v", result.linear);
    row("intercept_hz", result.intercept);
    text += fmt::format("chi2_reduced,{},\ndof,{},\n", result.chi2_reduced, result.dof);
  }
  if (out_path) {
    out.files.emplace_back(*out_path, text);
  } else {
    out.text = text;
  }
  return out;
}

CommandOutput cmd_tunability(const RunConfig& cfg, const StarkRegistry& registry,
                             std::optional<OutputFormat> format) {
  const auto donor = cfg.donor_species();
  const auto params = cfg.stark_parameters(registry);
  const auto report = tunability(params, donor, cfg.f0_hz(), cfg.tunability.e_max_v_per_cm,
                                 cfg.tunability.linewidth_hz, cfg.field.e_direction.label(),
                                 cfg.field.b_direction.label());
  CommandOutput out;
  switch (format.value_or(OutputFormat::Table)) {
    case OutputFormat::Json:
      out.text = tunability_json(report);
      break;
    case OutputFormat::Table:
      out.text = tunability_table(report);
      break;
    case OutputFormat::Csv:
      out.text = fmt::format(
          "donor,e_orientation,b_orientation,source,e_max_v_per_cm,max_shift_hz,linewidth_hz,"
          "ratio\n"
          "{},{},{},{},{},{},{},{}\n",
          report.donor, report.e_orientation, report.b_orientation, report.source,
          report.e_max_v_per_cm, report.max_shift_hz, report.linewidth_hz, report.ratio);
      break;
  }
  return out;
}

CommandOutput cmd_gtensor(const RunConfig& cfg, const StarkRegistry& registry,
                          std::optional<OutputFormat> format) {
  const auto vg = cfg.valley_g_tensor();
  const auto& valleys = ValleySet::germanium();
  const auto b_hat = to_unit_vector(cfg.field.b_direction);

  ValleyWeights weights = ValleyWeights::equal();
  std::optional<double> kappa;
  if (cfg.gtensor && cfg.gtensor->weights) {
    weights = ValleyWeights(*cfg.gtensor->weights);
  } else if (cfg.gtensor && (cfg.gtensor->kappa || cfg.gtensor->calibrate)) {
    const RepopulationModel model =
        cfg.gtensor->kappa
            ? RepopulationModel{*cfg.gtensor->kappa}
            : calibrate_repopulation(*cfg.stark_parameters(registry).eta_g, vg, valleys);
    kappa = model.kappa;
    const double e = cfg.field.e_magnitude_v_per_cm.value_or(0.0) * constants::v_per_cm_to_v_per_um;
    weights = repopulation_weights(model, to_unit_vector(cfg.field.e_direction), e, valleys);
  }
  const auto tensor = effective_g_tensor(vg, valleys, weights);
  const double g_b = g_along(tensor, b_hat);
  const auto grad = g_along_weight_gradient(vg, valleys, weights, b_hat);
  // Largest rate of change of g along B for a unit-norm redistribution
  // (sum of changes zero): the gradient projected off (1,1,1,1).
  const double mean = std::accumulate(grad.begin(), grad.end(), 0.0) / grad.size();
  double redistribution = 0.0;
  for (double g : grad) redistribution += (g - mean) * (g - mean);
  redistribution = std::sqrt(redistribution);
  const Eigen::Vector3d eig =
      Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d>(tensor.matrix()).eigenvalues();

  CommandOutput out;
  const auto& m = tensor.matrix();
  switch (format.value_or(OutputFormat::Table)) {
    case OutputFormat::Json: {
      ojson j;
      j["g_perp"] = vg.g_perp;
      j["g_par"] = vg.g_par;
      j["weights"] = weights.alpha();
      j["kappa_um2_per_v2"] = nullable(kappa);
      j["tensor"] = {
          {m(0, 0), m(0, 1), m(0, 2)}, {m(1, 0), m(1, 1), m(1, 2)}, {m(2, 0), m(2, 1), m(2, 2)}};
      j["eigenvalues"] = {eig(0), eig(1), eig(2)};
      j["b_direction"] = cfg.field.b_direction.label();
      j["g_along_b"] = g_b;
      j["weight_gradient"] = grad;
      j["max_redistribution_slope"] = redistribution;
      out.text = j.dump(2) + "\n";
      break;
    }
    case OutputFormat::Table:
      out.text = fmt::format("valley g: g_perp = {}  g_par = {}\n", vg.g_perp, vg.g_par);
      out.text += fmt::format("weights: {:.12f} {:.12f} {:.12f} {:.12f}\n", weights[0], weights[1],
                              weights[2], weights[3]);
      if (kappa) out.text += fmt::format("kappa: {:.9e} um^2/V^2\n", *kappa);
      out.text += "effective g-tensor:\n";
      for (int i = 0; i < 3; ++i) {
        out.text += fmt::format("  {:>14.10f} {:>14.10f} {:>14.10f}\n", m(i, 0), m(i, 1), m(i, 2));
      }
      out.text += fmt::format("eigenvalues: {:.10f} {:.10f} {:.10f}\n", eig(0), eig(1), eig(2));
      out.text += fmt::format("g along B {}: {:.10f}\n", cfg.field.b_direction.label(), g_b);
      out.text += fmt::format("dg/dalpha: {:.10f} {:.10f} {:.10f} {:.10f}\n", grad[0], grad[1],
                              grad[2], grad[3]);
      out.text += fmt::format("max slope under weight redistribution: {:.3e}\n", redistribution);
      break;
    case OutputFormat::Csv:
      out.text = "quantity,value\n";
      out.text += fmt::format("g_along_b,{}\n", g_b);
      for (int i = 0; i < 3; ++i) {
        for (int k = 0; k < 3; ++k) out.text += fmt::format("g_{}{},{}\n", i, k, m(i, k));
      }
      out.text += fmt::format("max_redistribution_slope,{}\n", redistribution);
      break;
  }
  return out;
}

}  // namespace gestark
