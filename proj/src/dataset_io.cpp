#include "gestark/dataset_io.hpp"

#include <fmt/format.h>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "gestark/error.hpp"

namespace gestark {

using json = nlohmann::ordered_json;

std::string dataset_csv(const EchoPhaseDataset& data) {
  std::string out = std::string(kDatasetHeader) + "\n";
  for (const auto& r : data.rows) {
    out += fmt::format("{},{},{},{}\n", r.e_v_per_cm, r.m_i.label(), r.df_hz, r.sigma_hz);
  }
  return out;
}

namespace {

double parse_number(const std::string& field, std::size_t line, const char* column) {
  char* end = nullptr;
  const double v = std::strtod(field.c_str(), &end);
  if (field.empty() || end != field.c_str() + field.size() || !std::isfinite(v)) {
    throw Error(ErrorKind::Config,
                fmt::format("dataset line {}: bad {} value '{}'", line, column, field));
  }
  return v;
}

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

EchoPhaseDataset parse_dataset_csv(const std::string& text) {
  EchoPhaseDataset data;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    if (!header_seen) {
      if (line != kDatasetHeader) {
        throw Error(ErrorKind::Config,
                    fmt::format("dataset line {}: expected header '{}'", lineno, kDatasetHeader));
      }
      header_seen = true;
      continue;
    }
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string f;
    while (std::getline(ss, f, ',')) fields.push_back(trim(f));
    if (fields.size() != 4) {
      throw Error(ErrorKind::Config,
                  fmt::format("dataset line {}: expected 4 fields, got {}", lineno, fields.size()));
    }
    EchoPhaseRow row{parse_number(fields[0], lineno, "e_field_v_per_cm"),
                     NuclearProjection::averaged(), parse_number(fields[2], lineno, "delta_f_hz"),
                     parse_number(fields[3], lineno, "sigma_hz")};
    try {
      row.m_i = NuclearProjection::parse(fields[1]);
    } catch (const Error&) {
      throw Error(ErrorKind::Config,
                  fmt::format("dataset line {}: bad m_i value '{}'", lineno, fields[1]));
    }
    if (row.sigma_hz < 0.0) {
      throw Error(ErrorKind::Config, fmt::format("dataset line {}: negative sigma_hz", lineno));
    }
    data.rows.push_back(row);
  }
  if (!header_seen) throw Error(ErrorKind::Config, "dataset is empty (no header)");
  return data;
}

std::string metadata_json(const EchoPhaseDataset& data) {
  const auto& m = data.metadata;
  json j;
  j["donor"] = to_string(m.donor);
  j["e_direction"] = {m.e_direction.h(), m.e_direction.k(), m.e_direction.l()};
  j["b_direction"] = {m.b_direction.h(), m.b_direction.k(), m.b_direction.l()};
  j["f0_hz"] = m.f0_hz;
  j["t_e_s"] = m.t_e_s;
  j["polarity"] = to_string(m.polarity);
  j["seed"] = m.seed;
  j["phase_sigma_rad"] = m.phase_sigma_rad;
  j["e_internal_v_per_cm"] = m.e_internal_v_per_cm;
  j["rows"] = data.rows.size();
  j["warnings"] = data.warnings;
  return j.dump(2) + "\n";
}

void apply_metadata_json(const std::string& text, EchoPhaseDataset& data) {
  try {
    const auto j = json::parse(text);
    auto& m = data.metadata;
    auto dir = [](const json& d) {
      return MillerDirection(d.at(0).get<int>(), d.at(1).get<int>(), d.at(2).get<int>());
    };
    m.donor = parse_donor(j.at("donor").get<std::string>());
    m.e_direction = dir(j.at("e_direction"));
    m.b_direction = dir(j.at("b_direction"));
    m.f0_hz = j.at("f0_hz").get<double>();
    m.t_e_s = j.at("t_e_s").get<double>();
    m.polarity = parse_polarity(j.at("polarity").get<std::string>());
    m.seed = j.at("seed").get<std::uint64_t>();
    m.phase_sigma_rad = j.value("phase_sigma_rad", 0.0);
    m.e_internal_v_per_cm = j.value("e_internal_v_per_cm", 0.0);
    if (j.contains("warnings")) data.warnings = j["warnings"].get<std::vector<std::string>>();
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Config, fmt::format("dataset metadata: {}", e.what()));
  }
}

std::filesystem::path sidecar_path(const std::filesystem::path& csv_path) {
  auto p = csv_path;
  return p.replace_extension(".json");
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, fmt::format("cannot open '{}'", path.string()));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file_atomic(const std::filesystem::path& path, const std::string& content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::Io, fmt::format("cannot write '{}'", path.string()));
    out << content;
    if (!out.flush())
      throw Error(ErrorKind::Io, fmt::format("write failed for '{}'", path.string()));
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error(ErrorKind::Io, fmt::format("cannot move output into '{}'", path.string()));
  }
}

void save_dataset(const EchoPhaseDataset& data, const std::filesystem::path& csv_path) {
  const auto csv = dataset_csv(data);
  const auto meta = metadata_json(data);
  write_text_file_atomic(csv_path, csv);
  write_text_file_atomic(sidecar_path(csv_path), meta);
}

EchoPhaseDataset load_dataset(const std::filesystem::path& csv_path) {
  auto data = parse_dataset_csv(read_text_file(csv_path));
  const auto side = sidecar_path(csv_path);
  if (side != csv_path && std::filesystem::exists(side)) {
    apply_metadata_json(read_text_file(side), data);
  }
  return data;
}

}  // namespace gestark
