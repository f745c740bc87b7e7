// gestark: Stark-shift modelling, simulation and fitting for donor spins in
// germanium.

#include <CLI11.hpp>
#include <iostream>
#include <optional>
#include <string>

#include "gestark/commands.hpp"
#include "gestark/dataset_io.hpp"
#include "gestark/error.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitIo = 4;

int exit_code(gestark::ErrorCategory c) {
  switch (c) {
    case gestark::ErrorCategory::Config:
      return kExitConfig;
    case gestark::ErrorCategory::Numeric:
      return kExitNumeric;
    case gestark::ErrorCategory::Io:
      return kExitIo;
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stark tuning of donor electron spins in germanium"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  std::string registry_path;
  std::string format_name;
  std::string data_path;
  std::optional<std::uint64_t> seed;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "run configuration (JSON)")->required();
    cmd->add_option("--out", out_path, "output file (stdout when omitted)");
    cmd->add_option("--seed", seed, "noise seed, overrides the config");
    cmd->add_option("--registry", registry_path,
                    "Stark parameter table (JSON); defaults to the bundled table");
    cmd->add_option("--format", format_name, "csv, json or table")
        ->check(CLI::IsMember({"csv", "json", "table"}));
  };

  auto* shift = app.add_subcommand("shift", "Stark shift per hyperfine line at one field");
  auto* sweep = app.add_subcommand("sweep", "Stark shift versus field (and B angle)");
  auto* simulate = app.add_subcommand("simulate", "synthetic echo-phase dataset");
  auto* fit = app.add_subcommand("fit", "global least-squares fit of a dataset");
  auto* tune = app.add_subcommand("tunability", "maximum shift versus ensemble linewidth");
  auto* gten = app.add_subcommand("gtensor", "effective g-tensor from the valley model");
  for (auto* cmd : {shift, sweep, simulate, fit, tune, gten}) add_common(cmd);
  fit->add_option("--data", data_path, "dataset CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  try {
    auto cfg = gestark::RunConfig::parse(gestark::read_text_file(config_path));
    if (seed) cfg.noise.seed = *seed;
    const auto registry =
        registry_path.empty()
            ? (std::filesystem::exists(gestark::StarkRegistry::bundled_path())
                   ? gestark::StarkRegistry::load(gestark::StarkRegistry::bundled_path())
                   : gestark::StarkRegistry::builtin())
            : gestark::StarkRegistry::load(registry_path);
    std::optional<gestark::OutputFormat> format;
    if (!format_name.empty()) format = gestark::parse_format(format_name);
    std::optional<std::filesystem::path> out;
    if (!out_path.empty()) out = out_path;

    gestark::CommandOutput result;
    if (*shift) {
      result = gestark::cmd_shift(cfg, registry, format);
    } else if (*sweep) {
      result = gestark::cmd_sweep(cfg, registry, format, out);
    } else if (*simulate) {
      result = gestark::cmd_simulate(cfg, registry, format, out);
    } else if (*fit) {
      result = gestark::cmd_fit(cfg, data_path, format, out);
    } else if (*tune) {
      result = gestark::cmd_tunability(cfg, registry, format);
    } else {
      result = gestark::cmd_gtensor(cfg, registry, format);
    }

    // shift, tunability and gtensor print to stdout unless --out is given.
    if (out && result.files.empty()) {
      result.files.emplace_back(*out, result.text);
      result.text.clear();
    }
    for (const auto& [path, content] : result.files) {
      gestark::write_text_file_atomic(path, content);
    }
    for (const auto& w : result.warnings) std::cerr << "warning: " << w << "\n";
    std::cout << result.text;
    return 0;
  } catch (const gestark::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.category());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  }
}
