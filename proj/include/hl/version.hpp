#pragma once

namespace hl {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace hl
