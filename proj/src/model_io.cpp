#include "hl/model_io.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace hl {

namespace {

std::string format17(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

void write_model(std::ostream& out, const EnvironmentModel& model) {
  const std::size_t n = model.num_states();
  const std::size_t m = model.num_actions();
  out << n << ' ' << m << '\n';
  for (int pass = 0; pass < 2; ++pass) {
    for (StateId s = 0; s < n; ++s) {
      for (ActionId a = 0; a < m; ++a) {
        std::vector<double> row(n, 0.0);
        for (const Outcome& o : model.outcomes(s, a))
          row[o.next] = pass == 0 ? o.probability : o.reward;
        for (std::size_t j = 0; j < n; ++j) out << (j ? " " : "") << format17(row[j]);
        out << '\n';
      }
    }
  }
}

void write_model(const std::filesystem::path& path, const EnvironmentModel& model) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  write_model(out, model);
  if (!out) throw IoError("failed writing " + path.string());
}

EnvironmentModel read_model(std::istream& in) {
  std::stringstream body;
  std::string line;
  while (std::getline(in, line))
    if (line.empty() || line[0] != '#') body << line << '\n';

  std::size_t n = 0;
  std::size_t m = 0;
  if (!(body >> n >> m) || n == 0 || m == 0) throw IoError("read_model: bad header");
  std::vector<double> p(n * m * n);
  std::vector<double> r(n * m * n);
  for (double& x : p)
    if (!(body >> x)) throw IoError("read_model: truncated probability block");
  for (double& x : r)
    if (!(body >> x)) throw IoError("read_model: truncated reward block");

  EnvironmentModel model(n, m, 0);
  for (StateId s = 0; s < n; ++s) {
    for (ActionId a = 0; a < m; ++a) {
      std::vector<Outcome> row;
      const std::size_t base = (s * m + a) * n;
      for (StateId j = 0; j < n; ++j)
        if (p[base + j] > 0.0) row.push_back({j, p[base + j], r[base + j]});
      model.set_outcomes(s, a, std::move(row));
    }
  }
  return model;
}

}  // namespace hl
