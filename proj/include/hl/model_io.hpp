#pragma once

#include <filesystem>
#include <iosfwd>

#include "hl/environment_model.hpp"

namespace hl {

// Plain-text matrix format:
//
//   <num_states> <num_actions>
//   P(s,a,0) ... P(s,a,n-1)      one line per (s,a), s major, a minor
//   R(s,a,0) ... R(s,a,n-1)      same ordering, after all P lines
//
// Values use 17 significant digits. Lines starting with '#' are ignored on
// read. The start state is not stored; reads assume state 0.

void write_model(std::ostream& out, const EnvironmentModel& model);
void write_model(const std::filesystem::path& path, const EnvironmentModel& model);
EnvironmentModel read_model(std::istream& in);

}  // namespace hl
