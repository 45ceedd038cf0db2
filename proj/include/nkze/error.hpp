#pragma once

#include <stdexcept>
#include <string>

namespace nkze {

/// Raised for any parameter combination that violates a model bound.
class ConfigError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when an exhaustive oracle is asked to enumerate too large a space.
class SizeError : public std::length_error {
  public:
    using std::length_error::length_error;
};

} // namespace nkze
