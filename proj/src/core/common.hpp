// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace qfb {

// Malformed or inconsistent caller input: bad dimensions, non-finite
// entries, unparseable files, negative weights.
class input_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Structurally valid input outside the mathematical domain of an
// operation: t <= 0, eta past the MGF pole, closed forms that do not
// apply to the given configuration.
class domain_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

inline void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw input_error(std::string(what) + " must be finite");
}

}  // namespace qfb
