#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "hl/metrics.hpp"

namespace hl {

using Metadata = std::vector<std::pair<std::string, std::string>>;

/// Writes `# key=value` comment lines, the header `step,mean,stderr`, then one
/// row per step (numbered from 1) with 12 significant digits and LF endings.
/// The file is written to a temporary sibling and renamed into place.
void csv_write(const AggregateResult& result, const std::filesystem::path& path,
               const Metadata& metadata = {});

/// Renders the same bytes csv_write would produce.
std::string csv_render(const AggregateResult& result, const Metadata& metadata = {});

struct CsvTable {
  Metadata metadata;
  std::vector<std::size_t> steps;
  std::vector<double> mean;
  std::vector<double> stderrs;
};

CsvTable csv_read(const std::filesystem::path& path);

/// Writes `contents` to a temporary file next to `path`, then renames it.
void write_file_atomically(const std::filesystem::path& path, const std::string& contents);

}  // namespace hl
