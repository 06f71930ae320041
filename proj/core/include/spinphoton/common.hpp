#pragma once

#include <stdexcept>
#include <string>

namespace spinphoton {

inline constexpr const char* version_string = "0.1.0";

/// Raised for invalid run parameters (bad grid sizes, malformed config, ...).
/// The CLI maps this to exit code 1.
class config_error : public std::runtime_error {
 public:
  explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when a numerical routine fails or an invariant is violated at
/// runtime (eigensolver breakdown, truncation overflow, ...). Exit code 2.
class numeric_error : public std::runtime_error {
 public:
  explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace spinphoton
