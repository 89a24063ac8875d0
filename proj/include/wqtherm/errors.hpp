#pragma once

#include <stdexcept>
#include <string>

namespace wqtherm {

// Numerical failure: unstable integration step, quadrature panel budget
// exhausted, and so on. The message carries the achieved error estimate.
class numerical_error : public std::runtime_error {
 public:
  explicit numerical_error(const std::string& msg) : std::runtime_error(msg) {}
};

// disambiguate(): several candidates survive every measurement.
class ambiguous_error : public std::runtime_error {
 public:
  explicit ambiguous_error(const std::string& msg) : std::runtime_error(msg) {}
};

// disambiguate(): no candidate is common to all measurements.
class inconsistent_error : public std::runtime_error {
 public:
  explicit inconsistent_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace wqtherm
