#pragma once

#include <stdexcept>
#include <string>

namespace qkdcoex {

/// Configuration is syntactically or semantically invalid (CLI exit code 2).
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// A data file is missing, malformed, or does not cover a query (exit code 3).
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

/// A computation left its numerical domain, e.g. an unphysical covariance
/// matrix was requested (exit code 4).
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qkdcoex
