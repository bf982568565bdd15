#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace hl {

/// Exponent p in rate(t) = kappa / t^p.
enum class Decay {
  constant,     // p = 0
  cube_root,    // p = 1/3
  square_root,  // p = 1/2
  linear,       // p = 1
};

/// Learning-rate schedule for the classical baselines.
struct LearningRateSchedule {
  Decay decay = Decay::constant;
  double kappa = 0.1;

  static LearningRateSchedule fixed(double kappa) { return {Decay::constant, kappa}; }
  static LearningRateSchedule power(double kappa, Decay decay) { return {decay, kappa}; }

  double exponent() const;
  /// kappa / t^p; t counts updates from 1.
  double rate(std::uint64_t t) const;
  void validate() const;
};

inline double schedule_rate(const LearningRateSchedule& s, std::uint64_t t) { return s.rate(t); }

std::string_view to_string(Decay decay);
/// Accepts fixed|cbrt|sqrt|linear; throws std::invalid_argument otherwise.
Decay parse_decay(std::string_view name);

}  // namespace hl
