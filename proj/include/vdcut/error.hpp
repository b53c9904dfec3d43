#pragma once

#include <stdexcept>
#include <string>

namespace vdcut {

/// Raised for violated preconditions and invariants throughout the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when a mitigated ratio is not statistically meaningful.
class InsignificantDenominator : public Error {
 public:
  explicit InsignificantDenominator(const std::string& what) : Error(what) {}
};

/// Raised for malformed experiment configurations.
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error(what) {}
};

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw Error(msg);
}

}  // namespace vdcut
