#pragma once

#include <stdexcept>
#include <string>

namespace swarmsim {

/// Invalid configuration: bad parameter values, dimension mismatches,
/// unparseable config input. CLI maps this to exit code 1.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Degenerate numeric input at runtime: 0/0 steady states, empty averaging
/// windows, environments with no efficient links, unstable step sizes.
class DomainError : public std::runtime_error {
 public:
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

/// Filesystem / stream failures. CLI maps this to exit code 2.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace swarmsim
