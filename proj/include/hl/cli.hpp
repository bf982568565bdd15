#pragma once

#include <iosfwd>

namespace hl {

inline constexpr int kExitOk = 0;
inline constexpr int kExitIo = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumeric = 3;

/// Parses `hl-lab <subcommand> [flags]` and runs it. Returns 0 on success, 2
/// on a configuration error, 3 on a numeric failure and 1 on an I/O failure.
/// Diagnostics go to `err`; tables printed without `--out` go to `out`.
int parse_and_dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int parse_and_dispatch(int argc, const char* const* argv);

}  // namespace hl
