#pragma once

#include <stdexcept>
#include <string>

namespace tclab {

// Fixed-point inversion (or power iteration) failed to reach tolerance.
class NonConvergenceError : public std::runtime_error {
 public:
  explicit NonConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

// A tracked separation vector collapsed into a faster-contracting direction.
class DegenerateDirectionError : public std::runtime_error {
 public:
  explicit DegenerateDirectionError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed or inconsistent run configuration.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace tclab
