#include <omp.h>

#include <exception>

#include "kernels_common.hpp"

namespace gestark::kernels::omp {

void synthesize_rows(const SynthesisPlan& plan, std::span<EchoPhaseRow> out) {
  const auto n = static_cast<std::ptrdiff_t>(out.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t r = 0; r < n; ++r) {
    out[r] = detail::make_row(plan, static_cast<std::size_t>(r));
  }
}

ShiftTable evaluate_shifts(const SynthesisPlan& plan) {
  ShiftTable table{plan.lines.size(), std::vector<double>(plan.row_count())};
  const std::size_t nlines = plan.lines.size();
  const auto n = static_cast<std::ptrdiff_t>(table.values.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t r = 0; r < n; ++r) {
    const auto u = static_cast<std::size_t>(r);
    table.values[u] =
        plan_shift(plan, plan.line_coefficients[u % nlines], plan.sweep_v_per_cm[u / nlines]);
  }
  return table;
}

std::vector<EnsembleSample> fit_ensemble(const EnsembleSpec& spec) {
  std::vector<EnsembleSample> samples(spec.trials);
  std::exception_ptr failure;
  const auto n = static_cast<std::ptrdiff_t>(spec.trials);
#pragma omp parallel for schedule(dynamic, 16)
  for (std::ptrdiff_t t = 0; t < n; ++t) {
    try {
      samples[static_cast<std::size_t>(t)] = detail::run_trial(spec, static_cast<std::size_t>(t));
    } catch (...) {
#pragma omp critical(gestark_ensemble_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return samples;
}

}  // namespace gestark::kernels::omp
