#pragma once

#include <exception>
#include <random>

#include "gestark/constants.hpp"
#include "gestark/kernels.hpp"

namespace gestark::kernels::detail {

inline EchoPhaseRow make_row(const SynthesisPlan& plan, std::size_t index) {
  const std::size_t nlines = plan.lines.size();
  const std::size_t i = index / nlines;
  const std::size_t j = index % nlines;
  const double e = plan.sweep_v_per_cm[i];
  const double df_true = plan_shift(plan, plan.line_coefficients[j], e);
  const double scale = 1.0 / (constants::two_pi * plan.t_e_s);
  double df = df_true;
  if (plan.phase_sigma_rad > 0.0) {
    df += plan.phase_sigma_rad * row_normal(plan.seed, index) * scale;
  }
  return {e, plan.lines[j], df, plan.phase_sigma_rad * scale};
}

inline EnsembleSample run_trial(const EnsembleSpec& spec, std::size_t trial) {
  SynthesisPlan plan = spec.plan;
  plan.seed = spec.base_seed + trial;
  EchoPhaseDataset data;
  data.metadata = spec.metadata;
  data.metadata.seed = plan.seed;
  data.rows.resize(plan.row_count());
  for (std::size_t r = 0; r < data.rows.size(); ++r) data.rows[r] = make_row(plan, r);
  const FitResult fit = global_fit(data, spec.donor, spec.f0_hz, spec.fit);
  EnsembleSample s;
  s.eta_g = fit.eta_g->value;
  s.eta_g_err = fit.eta_g->error;
  if (fit.eta_a) {
    s.eta_a = fit.eta_a->value;
    s.eta_a_err = fit.eta_a->error;
  }
  s.chi2_reduced = fit.chi2_reduced;
  return s;
}

}  // namespace gestark::kernels::detail
