#include "hl/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <system_error>

#include "hl/types.hpp"

namespace hl {

namespace {

void append_number(std::string& out, double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  out += buf;
}

}  // namespace

std::string csv_render(const AggregateResult& result, const Metadata& metadata) {
  if (result.mean.size() != result.stderrs.size())
    throw LengthMismatch("csv_write: mean and stderr lengths differ");
  std::string out;
  out.reserve(result.mean.size() * 40 + 256);
  for (const auto& [key, value] : metadata) out += "# " + key + "=" + value + "\n";
  out += "step,mean,stderr\n";
  for (std::size_t t = 0; t < result.mean.size(); ++t) {
    out += std::to_string(t + 1);
    out += ',';
    append_number(out, result.mean[t]);
    out += ',';
    append_number(out, result.stderrs[t]);
    out += '\n';
  }
  return out;
}

void write_file_atomically(const std::filesystem::path& path, const std::string& contents) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.flush();
    if (!out) {
      std::error_code ignored;
      std::filesystem::remove(tmp, ignored);
      throw IoError("failed writing " + tmp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::error_code ignored;
    std::filesystem::remove(tmp, ignored);
    throw IoError("cannot move " + tmp.string() + " to " + path.string() + ": " + ec.message());
  }
}

void csv_write(const AggregateResult& result, const std::filesystem::path& path,
               const Metadata& metadata) {
  write_file_atomically(path, csv_render(result, metadata));
}

CsvTable csv_read(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  CsvTable table;
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.rfind("# ", 0) == 0) {
      const auto eq = line.find('=');
      if (eq != std::string::npos) table.metadata.emplace_back(line.substr(2, eq - 2), line.substr(eq + 1));
      continue;
    }
    if (!header_seen) {
      if (line != "step,mean,stderr") throw IoError("csv_read: unexpected header '" + line + "'");
      header_seen = true;
      continue;
    }
    std::istringstream row(line);
    std::size_t step = 0;
    double mean = 0.0;
    double err = 0.0;
    char c1 = 0;
    char c2 = 0;
    if (!(row >> step >> c1 >> mean >> c2 >> err) || c1 != ',' || c2 != ',')
      throw IoError("csv_read: malformed row '" + line + "'");
    table.steps.push_back(step);
    table.mean.push_back(mean);
    table.stderrs.push_back(err);
  }
  if (!header_seen) throw IoError("csv_read: missing header");
  return table;
}

}  // namespace hl
