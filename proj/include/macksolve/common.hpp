#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace macksolve {

using cd = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kGamma = 1.4;

// Invalid inputs or violated preconditions (CLI exit code 2).
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A numerical procedure failed to reach its tolerance (CLI exit code 3).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Growth rate fell below what double precision can resolve.
class FloorError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace macksolve
