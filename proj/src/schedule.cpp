#include "hl/schedule.hpp"

#include <cmath>
#include <stdexcept>

namespace hl {

double LearningRateSchedule::exponent() const {
  switch (decay) {
    case Decay::constant: return 0.0;
    case Decay::cube_root: return 1.0 / 3.0;
    case Decay::square_root: return 0.5;
    case Decay::linear: return 1.0;
  }
  return 0.0;
}

double LearningRateSchedule::rate(std::uint64_t t) const {
  if (t == 0) throw std::invalid_argument("schedule_rate: t must be >= 1");
  const auto x = static_cast<double>(t);
  switch (decay) {
    case Decay::constant: return kappa;
    case Decay::cube_root: return kappa / std::cbrt(x);
    case Decay::square_root: return kappa / std::sqrt(x);
    case Decay::linear: return kappa / x;
  }
  return kappa;
}

void LearningRateSchedule::validate() const {
  if (!(kappa > 0.0) || !std::isfinite(kappa))
    throw std::invalid_argument("learning-rate kappa must be a positive finite number");
}

std::string_view to_string(Decay decay) {
  switch (decay) {
    case Decay::constant: return "fixed";
    case Decay::cube_root: return "cbrt";
    case Decay::square_root: return "sqrt";
    case Decay::linear: return "linear";
  }
  return "fixed";
}

Decay parse_decay(std::string_view name) {
  if (name == "fixed") return Decay::constant;
  if (name == "cbrt") return Decay::cube_root;
  if (name == "sqrt") return Decay::square_root;
  if (name == "linear") return Decay::linear;
  throw std::invalid_argument("unknown schedule '" + std::string(name) +
                              "' (expected fixed, cbrt, sqrt or linear)");
}

}  // namespace hl
