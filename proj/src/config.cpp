#include "gestark/config.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <json.hpp>

#include "gestark/error.hpp"

namespace gestark {

using json = nlohmann::json;

namespace {

std::size_t line_of_offset(const std::string& text, std::size_t offset) {
  offset = std::min(offset, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + offset, '\n'));
}

// Walks one JSON object, tracking its path for error messages.
class Block {
 public:
  Block(const json& j, std::string path, const std::string& text)
      : j_(j), path_(std::move(path)), text_(text) {
    if (!j_.is_object()) fail(path_, "expected an object");
  }

  [[noreturn]] void fail(const std::string& key, const std::string& what) const {
    const auto needle = "\"" + key.substr(key.find_last_of('/') + 1) + "\"";
    const auto pos = text_.find(needle);
    const auto where = key.rfind('/', 0) == 0 ? key : path_ + "/" + key;
    if (pos != std::string::npos) {
      throw Error(ErrorKind::Config,
                  fmt::format("config line {}: {}: {}", line_of_offset(text_, pos), where, what));
    }
    throw Error(ErrorKind::Config, fmt::format("config: {}: {}", where, what));
  }

  void allow(std::initializer_list<const char*> keys) const {
    for (const auto& [key, _] : j_.items()) {
      if (std::none_of(keys.begin(), keys.end(), [&](const char* k) { return key == k; })) {
        fail(key, "unknown key");
      }
    }
  }

  bool has(const char* key) const { return j_.contains(key); }

  Block child(const char* key) const { return Block(j_.at(key), path_ + "/" + key, text_); }

  std::optional<double> number(const char* key) const {
    if (!has(key)) return std::nullopt;
    const auto& v = j_.at(key);
    if (!v.is_number()) fail(key, "expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) fail(key, "expected a finite number");
    return d;
  }

  std::optional<double> positive(const char* key) const {
    auto v = number(key);
    if (v && !(*v > 0.0)) fail(key, "must be positive");
    return v;
  }

  std::optional<std::string> string(const char* key) const {
    if (!has(key)) return std::nullopt;
    const auto& v = j_.at(key);
    if (!v.is_string()) fail(key, "expected a string");
    return v.get<std::string>();
  }

  std::optional<bool> boolean(const char* key) const {
    if (!has(key)) return std::nullopt;
    const auto& v = j_.at(key);
    if (!v.is_boolean()) fail(key, "expected true or false");
    return v.get<bool>();
  }

  std::optional<std::uint64_t> unsigned_int(const char* key) const {
    if (!has(key)) return std::nullopt;
    const auto& v = j_.at(key);
    if (!v.is_number_unsigned()) fail(key, "expected a non-negative integer");
    return v.get<std::uint64_t>();
  }

  std::vector<double> numbers(const char* key) const {
    const auto& v = j_.at(key);
    if (!v.is_array()) fail(key, "expected an array of numbers");
    std::vector<double> out;
    for (const auto& x : v) {
      if (!x.is_number() || !std::isfinite(x.get<double>())) {
        fail(key, "expected an array of finite numbers");
      }
      out.push_back(x.get<double>());
    }
    return out;
  }

  MillerDirection direction(const char* key) const {
    const auto& v = j_.at(key);
    if (!v.is_array() || v.size() != 3 ||
        !std::all_of(v.begin(), v.end(), [](const json& x) { return x.is_number_integer(); })) {
      fail(key, "expected an integer triple such as [1,1,1]");
    }
    try {
      return {v[0].get<int>(), v[1].get<int>(), v[2].get<int>()};
    } catch (const Error& e) {
      fail(key, e.what());
    }
  }

  template <typename F>
  auto parsed(const char* key, F parse) const -> std::optional<decltype(parse(std::string()))> {
    auto s = string(key);
    if (!s) return std::nullopt;
    try {
      return parse(*s);
    } catch (const Error& e) {
      fail(key, e.what());
    }
  }

  void require(const char* key) const {
    if (!has(key)) fail(key, "is required");
  }

 private:
  const json& j_;
  std::string path_;
  const std::string& text_;
};

}  // namespace

RunConfig RunConfig::parse(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::Config,
                fmt::format("config line {}: JSON syntax error: {}",
                            line_of_offset(text, e.byte > 0 ? e.byte - 1 : 0), e.what()));
  }

  RunConfig cfg;
  const Block root(doc, "", text);
  root.allow({"donor", "field", "stark", "sequence", "noise", "strain", "tunability", "gtensor",
              "fit", "sweep"});

  root.require("donor");
  {
    const auto b = root.child("donor");
    b.allow({"species", "g0", "hyperfine_a_hz"});
    b.require("species");
    cfg.donor.species = *b.parsed("species", parse_donor);
    cfg.donor.g0 = b.positive("g0");
    cfg.donor.hyperfine_a_hz = b.positive("hyperfine_a_hz");
  }

  root.require("field");
  {
    const auto b = root.child("field");
    b.allow({"e_direction", "b_direction", "e_magnitude_v_per_cm", "sweep_v_per_cm", "polarity",
             "f0_hz", "b0_tesla"});
    b.require("e_direction");
    b.require("b_direction");
    cfg.field.e_direction = b.direction("e_direction");
    cfg.field.b_direction = b.direction("b_direction");
    cfg.field.e_magnitude_v_per_cm = b.number("e_magnitude_v_per_cm");
    if (b.has("sweep_v_per_cm")) cfg.field.sweep_v_per_cm = b.numbers("sweep_v_per_cm");
    if (auto p = b.parsed("polarity", parse_polarity)) cfg.field.polarity = *p;
    cfg.field.f0_hz = b.positive("f0_hz");
    cfg.field.b0_tesla = b.positive("b0_tesla");
    if (cfg.field.f0_hz && cfg.field.b0_tesla)
      b.fail("b0_tesla", "give f0_hz or b0_tesla, not both");
    if (!cfg.field.f0_hz && !cfg.field.b0_tesla)
      b.fail("f0_hz", "one of f0_hz or b0_tesla is required");
  }

  if (root.has("stark")) {
    const auto b = root.child("stark");
    b.allow({"source", "eta_g", "eta_a"});
    StarkBlock s;
    s.source = b.parsed("source", parse_source);
    s.eta_g = b.number("eta_g");
    s.eta_a = b.number("eta_a");
    if (s.source && (s.eta_g || s.eta_a)) {
      b.fail("source", "give either a registry source or explicit eta values, not both");
    }
    if (!s.source && !s.eta_g && !s.eta_a) {
      b.fail("source", "needs a registry source or explicit eta_g/eta_a");
    }
    cfg.stark = s;
  }

  if (root.has("sequence")) {
    const auto b = root.child("sequence");
    b.allow({"t_e_s", "tau_s", "t_half_pi_s", "t_pi_s"});
    if (auto v = b.positive("t_e_s")) cfg.sequence.t_e = *v;
    if (auto v = b.positive("tau_s")) cfg.sequence.tau = *v;
    if (auto v = b.positive("t_half_pi_s")) cfg.sequence.t_half_pi = *v;
    if (auto v = b.positive("t_pi_s")) cfg.sequence.t_pi = *v;
    try {
      cfg.sequence.validate();
    } catch (const Error& e) {
      b.fail("t_e_s", e.what());
    }
  }
  cfg.sequence.polarity = cfg.field.polarity;

  if (root.has("noise")) {
    const auto b = root.child("noise");
    b.allow({"phase_sigma_rad", "seed"});
    if (auto v = b.number("phase_sigma_rad")) {
      if (*v < 0.0) b.fail("phase_sigma_rad", "must be non-negative");
      cfg.noise.phase_sigma_rad = *v;
    }
    if (auto v = b.unsigned_int("seed")) cfg.noise.seed = *v;
  }

  if (root.has("strain")) {
    const auto b = root.child("strain");
    b.allow({"e_internal_v_per_cm"});
    if (auto v = b.number("e_internal_v_per_cm")) cfg.strain.e_internal_v_per_cm = *v;
  }

  if (root.has("tunability")) {
    const auto b = root.child("tunability");
    b.allow({"e_max_v_per_cm", "linewidth_hz"});
    if (auto v = b.number("e_max_v_per_cm")) {
      if (*v < 0.0) b.fail("e_max_v_per_cm", "must be non-negative");
      cfg.tunability.e_max_v_per_cm = *v;
    }
    if (auto v = b.positive("linewidth_hz")) cfg.tunability.linewidth_hz = *v;
  }

  if (root.has("gtensor")) {
    const auto b = root.child("gtensor");
    b.allow({"g_perp", "g_par", "weights", "kappa", "calibrate"});
    GTensorBlock g;
    g.g_perp = b.positive("g_perp");
    g.g_par = b.positive("g_par");
    if (b.has("weights")) {
      const auto w = b.numbers("weights");
      if (w.size() != 4) b.fail("weights", "expected 4 valley weights");
      g.weights = std::array<double, 4>{w[0], w[1], w[2], w[3]};
      try {
        ValleyWeights check(*g.weights);
      } catch (const Error& e) {
        b.fail("weights", e.what());
      }
    }
    g.kappa = b.number("kappa");
    g.calibrate = b.boolean("calibrate").value_or(false);
    const int modes = (g.weights ? 1 : 0) + (g.kappa ? 1 : 0) + (g.calibrate ? 1 : 0);
    if (modes > 1) b.fail("weights", "use at most one of weights, kappa, calibrate");
    cfg.gtensor = g;
  }

  if (root.has("fit")) {
    const auto b = root.child("fit");
    b.allow({"mode", "weighting", "fit_hyperfine", "intercept"});
    if (auto v = b.parsed("mode", parse_fit_mode)) cfg.fit.mode = *v;
    if (auto v = b.parsed("weighting", parse_weighting)) cfg.fit.weighting = *v;
    if (auto v = b.boolean("fit_hyperfine")) cfg.fit.fit_hyperfine = *v;
    if (auto v = b.boolean("intercept")) cfg.fit.intercept = *v;
  }

  if (root.has("sweep")) {
    const auto b = root.child("sweep");
    b.allow({"angles_deg", "rotation_axis"});
    b.require("angles_deg");
    AngleSweepBlock a;
    a.angles_deg = b.numbers("angles_deg");
    if (b.has("rotation_axis")) a.rotation_axis = b.direction("rotation_axis");
    cfg.angle_sweep = a;
  }

  return cfg;
}

DonorSpecies RunConfig::donor_species() const {
  auto d = DonorSpecies::standard(donor.species);
  if (donor.g0) d.g0 = *donor.g0;
  d.hyperfine_a_hz = donor.hyperfine_a_hz;
  return d;
}

double RunConfig::f0_hz() const {
  if (field.f0_hz) return *field.f0_hz;
  if (field.b0_tesla) return resonance_frequency(donor_species().g0, *field.b0_tesla);
  throw Error(ErrorKind::Config, "config: /field: one of f0_hz or b0_tesla is required");
}

FieldConfiguration RunConfig::field_configuration() const {
  FieldConfiguration f;
  f.e_direction = field.e_direction;
  f.b_direction = field.b_direction;
  f.e_magnitude_v_per_cm = field.e_magnitude_v_per_cm.value_or(0.0);
  f.polarity = field.polarity;
  f.f0_hz = f0_hz();
  return f;
}

StarkParameters RunConfig::stark_parameters(const StarkRegistry& registry) const {
  if (!stark) throw Error(ErrorKind::Config, "config: /stark: block is required for this command");
  if (!stark->source) {
    return StarkParameters{stark->eta_g, stark->eta_a, ParameterSource::Experiment};
  }
  auto p = registry.lookup(donor.species, field.e_direction, field.b_direction, *stark->source);
  if (!p) {
    throw Error(ErrorKind::Config,
                fmt::format("registry has no {} values for {} E={} B={}", to_string(*stark->source),
                            to_string(donor.species), field.e_direction.label(),
                            field.b_direction.label()));
  }
  return *p;
}

ValleyGTensor RunConfig::valley_g_tensor() const {
  auto base = donor.species == Donor::As75 ? ValleyGTensor::arsenic() : ValleyGTensor::phosphorus();
  if (gtensor) {
    if (gtensor->g_perp) base.g_perp = *gtensor->g_perp;
    if (gtensor->g_par) base.g_par = *gtensor->g_par;
  }
  return base;
}

}  // namespace gestark
