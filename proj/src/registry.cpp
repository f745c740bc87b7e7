#include "gestark/registry.hpp"

#include <fmt/format.h>

#include <fstream>
#include <json.hpp>
#include <sstream>

#include "gestark/error.hpp"

namespace gestark {

using json = nlohmann::ordered_json;

bool RegistryEntry::matches(Donor d, const MillerDirection& e, Geometry g,
                            const MillerDirection& b) const {
  return donor == d && geometry == g && e_direction.headless() == e.headless() &&
         b_direction.headless() == b.headless();
}

std::optional<StarkParameters> RegistryEntry::parameters(ParameterSource source) const {
  StarkParameters p;
  p.source = source;
  switch (source) {
    case ParameterSource::Experiment:
      p.eta_g = eta_g_exp;
      p.eta_a = eta_a_exp;
      break;
    case ParameterSource::Theory:
      p.eta_g = eta_g_theory;
      p.eta_a = eta_a_theory;
      break;
    case ParameterSource::Inferred:
      p.eta_g = eta_g_inferred;
      break;
  }
  if (!p.eta_g && !p.eta_a) return std::nullopt;
  return p;
}

StarkRegistry::StarkRegistry(std::vector<RegistryEntry> entries) : entries_(std::move(entries)) {
  for (const auto& e : entries_) {
    const auto g = classify_geometry(e.e_direction, e.b_direction);
    if (g != e.geometry) {
      throw Error(ErrorKind::Config,
                  fmt::format("registry row {} {} {}: directions are {}, not {}",
                              to_string(e.donor), e.e_direction.label(), e.b_direction.label(),
                              to_string(g), to_string(e.geometry)));
    }
  }
}

StarkRegistry StarkRegistry::builtin() {
  using D = MillerDirection;
  constexpr auto par = Geometry::Parallel;
  constexpr auto perp = Geometry::Perpendicular;
  constexpr auto none = std::nullopt;
  // clang-format off
  std::vector<RegistryEntry> rows = {
    // donor       E            geom  B             g_exp    g_err    g_th     a_exp    a_err    a_th     g_inf
    {Donor::As75, D{0, 0, 1},  perp, D{1, 1, 0},  -1.8e-3, 0.1e-3,  none,    -1.3e-1, 0.1e-1,  -1.2e-1, none, ""},
    {Donor::As75, D{0, 0, 1},  par,  D{0, 0, 1},  -1.6e-3, 0.1e-3,  none,    -8.2e-2, 0.9e-2,  -1.2e-1, none, ""},
    {Donor::As75, D{1, 1, 0},  perp, D{0, 0, 1},  -1.3e-3, 0.1e-3,  -1.7e-2, -7.8e-2, 1.5e-2,  -9.6e-2, none, ""},
    {Donor::As75, D{1, 1, 0},  par,  D{1, 1, 0},  1.7e-2,  0.1e-2,  1.7e-2,  none,    none,    -9.6e-2, none, ""},
    {Donor::As75, D{-1, 1, 1}, perp, D{0, 1, -1}, -3.0e-2, 0.2e-2,  -2.0e-2, none,    none,    -1.2e-1, none, ""},
    {Donor::As75, D{-1, 1, 1}, par,  D{-1, 1, 1}, 3.9e-2,  0.4e-2,  4.0e-2,  none,    none,    -1.2e-1, none, ""},
    {Donor::P31,  D{1, 0, 0},  par,  D{1, 0, 0},  -1.3e-3, 0.3e-3,  -4.8e-3, -2.2e-1, 0.1e-1,  -2.4e-1, none,
     "eta_g theory from tight-binding; other theory values from effective-mass theory"},
    {Donor::P31,  D{1, 1, 0},  par,  D{1, 1, 0},  9.0e-2,  1.1e-2,  1.0e-1,  none,    none,    -2.1e-1, none, ""},
    {Donor::P31,  D{1, 1, 1},  perp, D{0, 1, -1}, -1.3e-1, 0.1e-1,  -9.5e-2, none,    none,    -2.7e-1, none, ""},
    {Donor::P31,  D{1, 1, 1},  par,  D{1, 1, 1},  none,    none,    none,    none,    none,    none,    0.19,
     "inferred: 4.2 MHz at 480 V/cm and 9.6 GHz; not a measured or published parameter"},
  };
  // clang-format on
  return StarkRegistry(std::move(rows));
}

namespace {

json direction_json(const MillerDirection& d) { return json::array({d.h(), d.k(), d.l()}); }

MillerDirection direction_from_json(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 3 || !j[0].is_number_integer() || !j[1].is_number_integer() ||
      !j[2].is_number_integer()) {
    throw Error(ErrorKind::Config, fmt::format("{}: expected an integer triple", where));
  }
  return {j[0].get<int>(), j[1].get<int>(), j[2].get<int>()};
}

struct OptionalField {
  const char* key;
  std::optional<double> RegistryEntry::* member;
};

constexpr OptionalField kValueFields[] = {
    {"eta_g_exp", &RegistryEntry::eta_g_exp},
    {"eta_g_exp_err", &RegistryEntry::eta_g_exp_err},
    {"eta_g_theory", &RegistryEntry::eta_g_theory},
    {"eta_a_exp", &RegistryEntry::eta_a_exp},
    {"eta_a_exp_err", &RegistryEntry::eta_a_exp_err},
    {"eta_a_theory", &RegistryEntry::eta_a_theory},
    {"eta_g_inferred", &RegistryEntry::eta_g_inferred},
};

}  // namespace

std::string StarkRegistry::to_json() const {
  json rows = json::array();
  for (const auto& e : entries_) {
    json row;
    row["donor"] = to_string(e.donor);
    row["e_direction"] = direction_json(e.e_direction);
    row["geometry"] = to_string(e.geometry);
    row["b_direction"] = direction_json(e.b_direction);
    for (const auto& f : kValueFields) {
      if (const auto& v = e.*(f.member)) row[f.key] = *v;
    }
    if (!e.note.empty()) row["note"] = e.note;
    rows.push_back(std::move(row));
  }
  return rows.dump(2) + "\n";
}

StarkRegistry StarkRegistry::from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::Config, fmt::format("registry: {}", e.what()));
  }
  if (!doc.is_array()) throw Error(ErrorKind::Config, "registry: top level must be an array");

  std::vector<RegistryEntry> entries;
  try {
    for (std::size_t i = 0; i < doc.size(); ++i) {
      const auto& row = doc[i];
      const auto where = fmt::format("registry row {}", i);
      if (!row.is_object()) throw Error(ErrorKind::Config, where + ": expected an object");
      for (const auto& [key, _] : row.items()) {
        bool known = key == "donor" || key == "e_direction" || key == "geometry" ||
                     key == "b_direction" || key == "note";
        for (const auto& f : kValueFields) known = known || key == f.key;
        if (!known) throw Error(ErrorKind::Config, fmt::format("{}: unknown key '{}'", where, key));
      }
      for (const char* key : {"donor", "e_direction", "geometry", "b_direction"}) {
        if (!row.contains(key)) {
          throw Error(ErrorKind::Config, fmt::format("{}: missing '{}'", where, key));
        }
      }
      const auto geometry = row["geometry"].get<std::string>();
      Geometry g;
      if (geometry == "parallel") {
        g = Geometry::Parallel;
      } else if (geometry == "perpendicular") {
        g = Geometry::Perpendicular;
      } else {
        throw Error(ErrorKind::Config, fmt::format("{}: bad geometry '{}'", where, geometry));
      }
      RegistryEntry e{parse_donor(row["donor"].get<std::string>()),
                      direction_from_json(row["e_direction"], where + " e_direction"),
                      g,
                      direction_from_json(row["b_direction"], where + " b_direction"),
                      {},
                      {},
                      {},
                      {},
                      {},
                      {},
                      {},
                      {}};
      for (const auto& f : kValueFields) {
        if (row.contains(f.key)) {
          if (!row[f.key].is_number()) {
            throw Error(ErrorKind::Config, fmt::format("{}: '{}' must be a number", where, f.key));
          }
          e.*(f.member) = row[f.key].get<double>();
        }
      }
      if (row.contains("note")) e.note = row["note"].get<std::string>();
      entries.push_back(std::move(e));
    }
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Config, fmt::format("registry: {}", e.what()));
  }
  return StarkRegistry(std::move(entries));
}

StarkRegistry StarkRegistry::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, fmt::format("cannot open registry '{}'", path.string()));
  std::ostringstream ss;
  ss << in.rdbuf();
  return from_json(ss.str());
}

std::filesystem::path StarkRegistry::bundled_path() {
  return std::filesystem::path(GESTARK_DATA_DIR) / "stark_registry.json";
}

const RegistryEntry& StarkRegistry::row(Donor donor, const MillerDirection& e_dir,
                                        const MillerDirection& b_dir) const {
  const auto g = classify_geometry(e_dir, b_dir);
  for (const auto& e : entries_) {
    if (e.matches(donor, e_dir, g, b_dir)) return e;
  }
  throw Error(ErrorKind::UnknownOrientation,
              fmt::format("no registry row for {} E={} B={} ({})", to_string(donor), e_dir.label(),
                          b_dir.label(), to_string(g)));
}

std::optional<StarkParameters> StarkRegistry::lookup(Donor donor, const MillerDirection& e_dir,
                                                     const MillerDirection& b_dir,
                                                     ParameterSource source) const {
  return row(donor, e_dir, b_dir).parameters(source);
}

}  // namespace gestark
