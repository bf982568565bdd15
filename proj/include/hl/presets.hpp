#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hl/csv.hpp"
#include "hl/experiment.hpp"

namespace hl {

/// One configuration of a reproduction preset; `name` doubles as the CSV stem.
struct PresetEntry {
  std::string name;
  ExperimentSpec spec;
};

struct PresetOverrides {
  std::optional<std::size_t> runs;
  std::optional<std::size_t> steps;
  std::size_t workers = 0;
};

/// chain51, random50, nonstat21, gridworld.
const std::vector<std::string>& preset_names();

/// Every configuration of `preset` with the given master seed. Throws
/// std::invalid_argument for an unknown preset name.
std::vector<PresetEntry> make_preset(std::string_view preset, std::uint64_t master_seed,
                                     const PresetOverrides& overrides = {});

/// Metadata block written atop every CSV.
Metadata csv_metadata(const ExperimentSpec& spec, std::string_view preset = {});

struct PresetResult {
  std::string name;
  ExperimentSpec spec;
  AggregateResult result;
};

/// Runs every entry and writes `<out_dir>/<name>.csv` for each.
std::vector<PresetResult> run_preset(std::string_view preset, std::uint64_t master_seed,
                                     const std::filesystem::path& out_dir,
                                     const PresetOverrides& overrides = {});

}  // namespace hl
