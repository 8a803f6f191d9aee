#pragma once

#include <stdexcept>
#include <string>

namespace evg {

// bad user-supplied parameters (CLI exit 2)
struct ParamError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// enumeration would exceed a configured size cap (CLI exit 3)
struct SizeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// NaN, non-convergence or a violated numerical precondition (CLI exit 4)
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

} // namespace evg
