#pragma once

#include <filesystem>
#include <string>

#include "gestark/experiment.hpp"

namespace gestark {

inline constexpr const char* kDatasetHeader = "e_field_v_per_cm,m_i,delta_f_hz,sigma_hz";

/// CSV body with kDatasetHeader. Numbers use the shortest round-trip form;
/// M_I is written as "-3/2", "1/2", ... or "avg".
std::string dataset_csv(const EchoPhaseDataset& data);
/// Parses rows only; metadata is left default. Throws Config on malformed
/// input, naming the offending line.
EchoPhaseDataset parse_dataset_csv(const std::string& text);

std::string metadata_json(const EchoPhaseDataset& data);
/// Fills data.metadata (and warnings) from a sidecar document.
void apply_metadata_json(const std::string& text, EchoPhaseDataset& data);

/// data.csv -> data.json
std::filesystem::path sidecar_path(const std::filesystem::path& csv_path);

/// Writes CSV plus sidecar. Each file is written to a temporary and renamed.
void save_dataset(const EchoPhaseDataset& data, const std::filesystem::path& csv_path);
/// Reads the CSV and, when present, its sidecar.
EchoPhaseDataset load_dataset(const std::filesystem::path& csv_path);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace gestark
