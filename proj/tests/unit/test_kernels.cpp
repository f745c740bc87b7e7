#include <doctest.h>

#include <cstring>

#include "gestark/error.hpp"
#include "gestark/kernels.hpp"

using namespace gestark;

namespace {

kernels::SynthesisPlan plan(Polarity pol, double sigma, double e_int) {
  auto donor = DonorSpecies::standard(Donor::As75);
  donor.hyperfine_a_hz = 1e8;
  const StarkParameters p{-2.1e-3, -3.8e-3, ParameterSource::Experiment};
  std::vector<double> sweep;
  for (int i = 0; i < 257; ++i) sweep.push_back(-100.0 + 200.0 * i / 256.0);
  PulseSequence seq;
  seq.polarity = pol;
  return kernels::make_plan(donor, p, sweep, 9.6e9, pol, seq, {sigma, 99}, {e_int});
}

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

}  // namespace

TEST_CASE("row_normal depends only on (seed, row)") {
  CHECK(same_bits(kernels::row_normal(7, 3), kernels::row_normal(7, 3)));
  CHECK_FALSE(same_bits(kernels::row_normal(7, 3), kernels::row_normal(7, 4)));
  CHECK_FALSE(same_bits(kernels::row_normal(7, 3), kernels::row_normal(8, 3)));
}

TEST_CASE("synthesize_rows: serial and OpenMP agree bit for bit") {
  for (auto pol : {Polarity::Bipolar, Polarity::Unipolar}) {
    const auto pl = plan(pol, 0.05, 15.0);
    std::vector<EchoPhaseRow> a(pl.row_count()), b(pl.row_count());
    kernels::serial::synthesize_rows(pl, a);
    kernels::omp::synthesize_rows(pl, b);
    for (std::size_t i = 0; i < a.size(); ++i) {
      REQUIRE(same_bits(a[i].df_hz, b[i].df_hz));
      REQUIRE(same_bits(a[i].sigma_hz, b[i].sigma_hz));
      REQUIRE(a[i].m_i == b[i].m_i);
      REQUIRE(same_bits(a[i].e_v_per_cm, b[i].e_v_per_cm));
    }
  }
}

TEST_CASE("evaluate_shifts: serial and OpenMP agree bit for bit") {
  const auto pl = plan(Polarity::Unipolar, 0.0, 15.0);
  const auto a = kernels::serial::evaluate_shifts(pl);
  const auto b = kernels::omp::evaluate_shifts(pl);
  REQUIRE(a.lines == 4);
  REQUIRE(a.values.size() == b.values.size());
  for (std::size_t i = 0; i < a.values.size(); ++i) REQUIRE(same_bits(a.values[i], b.values[i]));
  // Entries match the single-point helper.
  CHECK(same_bits(a.values[5 * 4 + 2],
                  kernels::plan_shift(pl, pl.line_coefficients[2], pl.sweep_v_per_cm[5])));
}

TEST_CASE("fit_ensemble: serial and OpenMP agree bit for bit") {
  auto donor = DonorSpecies::standard(Donor::As75);
  donor.hyperfine_a_hz = 1e8;
  kernels::EnsembleSpec spec{plan(Polarity::Bipolar, 0.05, 0.0), {}, donor, 9.6e9, {}, 1000, 40};
  spec.metadata.f0_hz = 9.6e9;
  const auto a = kernels::serial::fit_ensemble(spec);
  const auto b = kernels::omp::fit_ensemble(spec);
  REQUIRE(a.size() == 40);
  REQUIRE(b.size() == 40);
  for (std::size_t i = 0; i < a.size(); ++i) {
    REQUIRE(same_bits(a[i].eta_g, b[i].eta_g));
    REQUIRE(same_bits(a[i].eta_g_err, b[i].eta_g_err));
    REQUIRE(same_bits(*a[i].eta_a, *b[i].eta_a));
    REQUIRE(same_bits(a[i].chi2_reduced, b[i].chi2_reduced));
  }
  CHECK_FALSE(same_bits(a[0].eta_g, a[1].eta_g));
}

TEST_CASE("fit_ensemble propagates errors from worker threads") {
  auto donor = DonorSpecies::standard(Donor::As75);
  donor.hyperfine_a_hz = 1e8;
  auto pl = plan(Polarity::Bipolar, 0.05, 0.0);
  pl.sweep_v_per_cm = {50.0, -50.0};  // one distinct |E|
  kernels::EnsembleSpec spec{pl, {}, donor, 9.6e9, {}, 0, 8};
  CHECK_THROWS_AS(kernels::omp::fit_ensemble(spec), Error);
  CHECK_THROWS_AS(kernels::serial::fit_ensemble(spec), Error);
}
