#pragma once

#include <cmath>
#include <complex>

namespace sfwm {

using Complex = std::complex<double>;

inline constexpr Complex kI{0.0, 1.0};

/// exp(w) - 1 without cancellation for small |w|.
inline Complex expm1(Complex w) {
  const double a = w.real();
  const double b = w.imag();
  const double half_sin = std::sin(0.5 * b);
  const double re = std::expm1(a) * std::cos(b) - 2.0 * half_sin * half_sin;
  const double im = std::exp(a) * std::sin(b);
  return {re, im};
}

/// sqrt(kappa^2 - delta^2) on the principal branch: real inside the stop band,
/// +i|.| outside. The difference is formed as a product to keep the band edge exact.
inline Complex stopband_xi(double kappa, double delta) {
  const double xi2 = (kappa - delta) * (kappa + delta);
  return xi2 >= 0.0 ? Complex{std::sqrt(xi2), 0.0} : Complex{0.0, std::sqrt(-xi2)};
}

}  // namespace sfwm
