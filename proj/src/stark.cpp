#include "gestark/stark.hpp"

#include <fmt/format.h>

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>

#include "gestark/constants.hpp"
#include "gestark/error.hpp"

namespace gestark {

const char* to_string(Donor d) {
  switch (d) {
    case Donor::As75:
      return "As75";
    case Donor::P31:
      return "P31";
  }
  return "?";
}

Donor parse_donor(const std::string& s) {
  if (s == "As75" || s == "As" || s == "75As") return Donor::As75;
  if (s == "P31" || s == "P" || s == "31P") return Donor::P31;
  throw Error(ErrorKind::Config, fmt::format("unknown donor species '{}'", s));
}

const char* to_string(ParameterSource s) {
  switch (s) {
    case ParameterSource::Experiment:
      return "experiment";
    case ParameterSource::Theory:
      return "theory";
    case ParameterSource::Inferred:
      return "inferred";
  }
  return "?";
}

ParameterSource parse_source(const std::string& s) {
  if (s == "experiment") return ParameterSource::Experiment;
  if (s == "theory") return ParameterSource::Theory;
  if (s == "inferred") return ParameterSource::Inferred;
  throw Error(ErrorKind::Config,
              fmt::format("unknown parameter source '{}' (experiment|theory|inferred)", s));
}

const char* to_string(Polarity p) { return p == Polarity::Bipolar ? "bipolar" : "unipolar"; }

Polarity parse_polarity(const std::string& s) {
  if (s == "bipolar") return Polarity::Bipolar;
  if (s == "unipolar") return Polarity::Unipolar;
  throw Error(ErrorKind::Config, fmt::format("unknown polarity '{}' (bipolar|unipolar)", s));
}

namespace {

bool parse_int(std::string_view s, int& out) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

}  // namespace

NuclearProjection NuclearProjection::parse(const std::string& raw) {
  std::string s;
  for (char c : raw) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  }
  if (s == "avg" || s == "averaged") return averaged();
  const auto bad = [&] {
    return Error(ErrorKind::InvalidProjection, fmt::format("cannot parse M_I value '{}'", raw));
  };
  if (auto slash = s.find('/'); slash != std::string::npos) {
    int num = 0;
    int den = 0;
    if (!parse_int(std::string_view(s).substr(0, slash), num) ||
        !parse_int(std::string_view(s).substr(slash + 1), den) || (den != 1 && den != 2)) {
      throw bad();
    }
    return from_twice(den == 2 ? num : 2 * num);
  }
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(v)) throw bad();
  const double twice = 2.0 * v;
  if (twice != std::round(twice)) throw bad();
  return from_twice(static_cast<int>(twice));
}

std::string NuclearProjection::label() const {
  if (averaged_) return "avg";
  if (twice_ % 2 == 0) return fmt::format("{}", twice_ / 2);
  return fmt::format("{}/2", twice_);
}

DonorSpecies DonorSpecies::standard(Donor d) {
  switch (d) {
    case Donor::As75:
      return {Donor::As75, 1.57, 3, std::nullopt};
    case Donor::P31:
      return {Donor::P31, 1.5631, 1, std::nullopt};
  }
  throw Error(ErrorKind::InvalidArgument, "unknown donor");
}

void DonorSpecies::check_projection(const NuclearProjection& m) const {
  if (m.is_averaged()) return;
  if (std::abs(m.twice()) > twice_nuclear_spin || (m.twice() - twice_nuclear_spin) % 2 != 0) {
    throw Error(ErrorKind::InvalidProjection,
                fmt::format("M_I = {} is not allowed for {} (I = {}/2)", m.label(), to_string(name),
                            twice_nuclear_spin));
  }
}

double shift_coefficient(const StarkParameters& p, const DonorSpecies& donor, double f0_hz,
                         const NuclearProjection& m) {
  donor.check_projection(m);
  if (!p.eta_g) {
    throw Error(ErrorKind::MissingSpinOrbitParameter,
                fmt::format("eta_g is not available ({} source)", to_string(p.source)));
  }
  double coeff = *p.eta_g * f0_hz;
  if (!m.is_averaged() && m.twice() != 0) {
    if (!p.eta_a) {
      throw Error(ErrorKind::MissingHyperfineParameter,
                  fmt::format("eta_A is not available; M_I = {} needs it (use the averaged line)",
                              m.label()));
    }
    if (!donor.hyperfine_a_hz) {
      throw Error(ErrorKind::MissingA, fmt::format("hyperfine constant A for {} must be configured",
                                                   to_string(donor.name)));
    }
    coeff += *p.eta_a * *donor.hyperfine_a_hz * m.value();
  }
  return coeff;
}

namespace {
constexpr double kFieldScale2 = constants::v_per_cm_to_v_per_um * constants::v_per_cm_to_v_per_um;

}  // namespace

double stark_shift(const StarkParameters& p, const DonorSpecies& donor, double f0_hz,
                   const NuclearProjection& m, double e_v_per_cm) {
  return shift_coefficient(p, donor, f0_hz, m) * (e_v_per_cm * e_v_per_cm) * kFieldScale2;
}

double shift_with_strain(const StarkParameters& p, const DonorSpecies& donor, double f0_hz,
                         const NuclearProjection& m, double e_ext_v_per_cm,
                         const StrainConfiguration& strain) {
  const double total = strain.e_internal_v_per_cm + e_ext_v_per_cm;
  return shift_coefficient(p, donor, f0_hz, m) * (total * total) * kFieldScale2;
}

double bipolar_effective_shift(const StarkParameters& p, const DonorSpecies& donor, double f0_hz,
                               const NuclearProjection& m, double e_ext_v_per_cm,
                               const StrainConfiguration& strain) {
  // (1/2)[(Ei + E)^2 + (Ei - E)^2] = E^2 + Ei^2
  const double ei = strain.e_internal_v_per_cm;
  return shift_coefficient(p, donor, f0_hz, m) * (e_ext_v_per_cm * e_ext_v_per_cm + ei * ei) *
         kFieldScale2;
}

double applied_shift(Polarity polarity, const StarkParameters& p, const DonorSpecies& donor,
                     double f0_hz, const NuclearProjection& m, double e_ext_v_per_cm,
                     const StrainConfiguration& strain) {
  return polarity == Polarity::Bipolar
             ? bipolar_effective_shift(p, donor, f0_hz, m, e_ext_v_per_cm, strain)
             : shift_with_strain(p, donor, f0_hz, m, e_ext_v_per_cm, strain);
}

}  // namespace gestark
