#pragma once

#include <numbers>
#include <stdexcept>
#include <string>

namespace sfwm {

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s
inline constexpr double kPi = std::numbers::pi;

/// Vacuum wavelength in nm to angular frequency in rad/s.
inline double omega_from_nm(double lambda_nm) {
  return 2.0 * kPi * kSpeedOfLight / (lambda_nm * 1e-9);
}

/// Angular frequency in rad/s to vacuum wavelength in nm.
inline double nm_from_omega(double omega) {
  return 2.0 * kPi * kSpeedOfLight / omega * 1e9;
}

/// Argument outside the range where a model is valid (e.g. Sellmeier window).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A physically meaningful request that has no solution (e.g. no phase-matched detuning).
class PhysicsError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace sfwm
