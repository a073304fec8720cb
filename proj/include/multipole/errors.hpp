#pragma once

#include <stdexcept>
#include <string>

namespace multipole {

/// Invalid quantum numbers, dimensions or configuration values.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Evaluation at a point where the outgoing-wave mode functions are singular (kr <= 0).
class SingularityError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Every eigenvalue of the fluctuation matrix is below the absolute floor.
class DarkPointError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An effective mode was requested whose eigenvalue fell below the suppression threshold.
class SuppressedModeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Mandel Q evaluated on a mode with vacuum-level intensity.
class UndefinedQError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Fock-space dimension exceeds the configured limit.
class DimensionError : public std::length_error {
 public:
  using std::length_error::length_error;
};

}  // namespace multipole
