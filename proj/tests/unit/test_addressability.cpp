#include <doctest.h>

#include <cmath>
#include <json.hpp>

#include "gestark/addressability.hpp"
#include "gestark/error.hpp"
#include "gestark/registry.hpp"

using namespace gestark;

TEST_CASE("inferred P [111] || [111] at 480 V/cm exceeds the linewidth") {
  const auto p =
      *StarkRegistry::builtin().lookup(Donor::P31, {1, 1, 1}, {1, 1, 1}, ParameterSource::Inferred);
  const auto r =
      tunability(p, DonorSpecies::standard(Donor::P31), 9.6e9, kDefaultMaxField, kDefaultLinewidth);
  CHECK(r.max_shift_hz == doctest::Approx(4202496.0).epsilon(1e-12));
  CHECK(r.ratio == doctest::Approx(3.820450909090909).epsilon(1e-12));
  CHECK(r.ratio > 1.0);
  CHECK(r.source == "inferred");
}

TEST_CASE("measured P [100] || [100] at 480 V/cm is far below the linewidth") {
  const auto p = *StarkRegistry::builtin().lookup(Donor::P31, {1, 0, 0}, {1, 0, 0},
                                                  ParameterSource::Experiment);
  const auto r = tunability(p, DonorSpecies::standard(Donor::P31), 9.6e9, 480.0, 1.1e6);
  CHECK(r.max_shift_hz == doctest::Approx(28753.92).epsilon(1e-12));
  CHECK(r.ratio == doctest::Approx(0.026139927272727).epsilon(1e-10));
  CHECK(r.ratio < 1.0);
}

TEST_CASE("tunability edge cases") {
  const StarkParameters p{0.19, std::nullopt, ParameterSource::Inferred};
  const auto donor = DonorSpecies::standard(Donor::P31);
  const auto zero = tunability(p, donor, 9.6e9, 0.0, 1.1e6);
  CHECK(zero.max_shift_hz == 0.0);
  CHECK(zero.ratio == 0.0);
  const auto a = tunability(p, donor, 9.6e9, 100.0, 1.1e6);
  const auto b = tunability(p, donor, 9.6e9, 200.0, 1.1e6);
  CHECK(b.ratio == doctest::Approx(4.0 * a.ratio).epsilon(1e-15));
  CHECK_THROWS_AS(tunability(p, donor, 9.6e9, -1.0, 1.1e6), Error);
  CHECK_THROWS_AS(tunability(p, donor, 9.6e9, 1.0, 0.0), Error);
  const StarkParameters theory_only{std::nullopt, -0.4, ParameterSource::Theory};
  CHECK_THROWS_AS(tunability(theory_only, donor, 9.6e9, 1.0, 1.1e6), Error);
}

TEST_CASE("tunability report formats") {
  const StarkParameters p{0.19, std::nullopt, ParameterSource::Inferred};
  const auto r =
      tunability(p, DonorSpecies::standard(Donor::P31), 9.6e9, 480.0, 1.1e6, "[1,1,1]", "[1,1,1]");
  const auto j = nlohmann::json::parse(tunability_json(r));
  CHECK(j["ratio"].get<double>() == r.ratio);
  CHECK(j["comparison_shift_si_hz"] == -3.0);
  CHECK(j["comparison_field_si_v_per_cm"] == 50.0);
  CHECK(j["e_orientation"] == "[1,1,1]");
  const auto t = tunability_table(r);
  CHECK(t.find("4.2025e+06") != std::string::npos);
  CHECK(t.find("3.82045") != std::string::npos);
}
