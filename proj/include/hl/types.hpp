#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hl {

using StateId = std::size_t;
using ActionId = std::size_t;

/// Guard used by every division in the estimators.
inline constexpr double kDenominatorTolerance = 1e-12;

/// Traces at or below this magnitude are dropped from the value-update loop.
inline constexpr double kTraceCutoff = 1e-12;

/// Reward discount `gamma` and evidence-forgetting factor `lambda`.
struct DiscountParams {
  double gamma = 0.99;
  double lambda = 1.0;

  /// Throws std::invalid_argument unless gamma is in [0,1) and lambda is in
  /// (0,1] (or [0,1] when `allow_zero_lambda`, as classical TD permits).
  void validate(bool allow_zero_lambda = false) const;
};

/// One observed transition (s, r, s').
struct TransitionStep {
  StateId s = 0;
  double reward = 0.0;
  StateId s_next = 0;
};

/// Base for failures caused by the numbers rather than the configuration.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A learning-rate denominator vanished (zero pseudo-count on a first visit).
class DegenerateDenominator : public NumericError {
 public:
  using NumericError::NumericError;
};

class SingularSystem : public NumericError {
 public:
  using NumericError::NumericError;
};

class GenerationFailure : public NumericError {
 public:
  using NumericError::NumericError;
};

class EmptyTrajectory : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class LengthMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hl
