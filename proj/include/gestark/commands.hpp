#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gestark/config.hpp"
#include "gestark/registry.hpp"

namespace gestark {

enum class OutputFormat { Csv, Json, Table };

OutputFormat parse_format(const std::string& s);

/// What a command produced. Nothing is written until the command has fully
/// succeeded; the caller then writes `files` and prints `text`.
struct CommandOutput {
  std::string text;
  std::vector<std::pair<std::filesystem::path, std::string>> files;
  std::vector<std::string> warnings;
};

/// Per-line and line-averaged shift at field.e_magnitude_v_per_cm.
CommandOutput cmd_shift(const RunConfig& cfg, const StarkRegistry& registry,
                        std::optional<OutputFormat> format);

/// Shift versus field over field.sweep_v_per_cm; with a sweep block, the
/// valley-repopulation shift versus B rotation angle as well.
CommandOutput cmd_sweep(const RunConfig& cfg, const StarkRegistry& registry,
                        std::optional<OutputFormat> format,
                        const std::optional<std::filesystem::path>& out);

/// Synthetic dataset (CSV) plus JSON metadata sidecar.
CommandOutput cmd_simulate(const RunConfig& cfg, const StarkRegistry& registry,
                           std::optional<OutputFormat> format,
                           const std::optional<std::filesystem::path>& out);

CommandOutput cmd_fit(const RunConfig& cfg, const std::filesystem::path& dataset,
                      std::optional<OutputFormat> format,
                      const std::optional<std::filesystem::path>& out);

CommandOutput cmd_tunability(const RunConfig& cfg, const StarkRegistry& registry,
                             std::optional<OutputFormat> format);

CommandOutput cmd_gtensor(const RunConfig& cfg, const StarkRegistry& registry,
                          std::optional<OutputFormat> format);

}  // namespace gestark
