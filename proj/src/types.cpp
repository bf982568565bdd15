#include "hl/types.hpp"

#include <cmath>

namespace hl {

void DiscountParams::validate(bool allow_zero_lambda) const {
  if (!(gamma >= 0.0 && gamma < 1.0))
    throw std::invalid_argument("gamma must lie in [0, 1), got " + std::to_string(gamma));
  const bool lambda_ok = allow_zero_lambda ? (lambda >= 0.0 && lambda <= 1.0)
                                           : (lambda > 0.0 && lambda <= 1.0);
  if (!lambda_ok)
    throw std::invalid_argument(std::string("lambda must lie in ") +
                                (allow_zero_lambda ? "[0, 1]" : "(0, 1]") + ", got " +
                                std::to_string(lambda));
}

}  // namespace hl
