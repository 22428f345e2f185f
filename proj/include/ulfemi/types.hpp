#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace ulfemi {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

/// Vacuum permittivity, F/m (CODATA 2018).
inline constexpr double kEps0 = 8.8541878128e-12;

enum class ErrorCode {
  EmptyNetwork,
  SingularMatrix,
  DegenerateDivider,
  DegenerateDenominator,
  AsymmetricTerminals,
  ZeroBaseline,
  IndexOutOfRange,
  GeometryViolation,
  ArityMismatch,
  InvalidArgument,
};

const char* to_string(ErrorCode code);

/// Exception carrying a machine-readable failure category alongside the
/// human-readable message.
class SimError : public std::runtime_error {
 public:
  SimError(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace ulfemi
