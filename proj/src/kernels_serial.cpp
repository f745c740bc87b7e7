#include <random>

#include "kernels_common.hpp"

namespace gestark::kernels {

double row_normal(std::uint64_t seed, std::uint64_t row) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(row), static_cast<std::uint32_t>(row >> 32)};
  std::mt19937_64 gen(seq);
  std::normal_distribution<double> normal(0.0, 1.0);
  return normal(gen);
}

double plan_shift(const SynthesisPlan& plan, double coefficient, double e) {
  constexpr double scale2 = constants::v_per_cm_to_v_per_um * constants::v_per_cm_to_v_per_um;
  const double ei = plan.e_internal_v_per_cm;
  if (plan.polarity == Polarity::Bipolar) return coefficient * (e * e + ei * ei) * scale2;
  const double total = ei + e;
  return coefficient * (total * total) * scale2;
}

namespace serial {

void synthesize_rows(const SynthesisPlan& plan, std::span<EchoPhaseRow> out) {
  for (std::size_t r = 0; r < out.size(); ++r) out[r] = detail::make_row(plan, r);
}

ShiftTable evaluate_shifts(const SynthesisPlan& plan) {
  ShiftTable table{plan.lines.size(), std::vector<double>(plan.row_count())};
  const std::size_t nlines = plan.lines.size();
  for (std::size_t r = 0; r < table.values.size(); ++r) {
    table.values[r] =
        plan_shift(plan, plan.line_coefficients[r % nlines], plan.sweep_v_per_cm[r / nlines]);
  }
  return table;
}

std::vector<EnsembleSample> fit_ensemble(const EnsembleSpec& spec) {
  std::vector<EnsembleSample> samples(spec.trials);
  for (std::size_t t = 0; t < spec.trials; ++t) samples[t] = detail::run_trial(spec, t);
  return samples;
}

}  // namespace serial
}  // namespace gestark::kernels
