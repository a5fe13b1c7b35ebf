#pragma once

#include <vector>

#include "sfwm/complex_math.hpp"

namespace sfwm {

/// coeff * z^power * exp(rate * z + offset).
///
/// Terms built by the grating module satisfy |exp(rate z + offset)| <= 1 on
/// [0, L]; integrate() relies on that to stay free of overflow.
struct ExpTerm {
  Complex coeff{1.0, 0.0};
  Complex rate{0.0, 0.0};
  Complex offset{0.0, 0.0};
  int power = 0;
};

using ExpSeries = std::vector<ExpTerm>;

Complex evaluate(const ExpSeries& series, double z);

ExpSeries conjugate(const ExpSeries& series);

ExpSeries multiply(const ExpSeries& a, const ExpSeries& b);

/// Integral over [0, length] of u^power exp(s u), for Re(s) <= 0.
Complex power_exp_integral(int power, Complex s, double length);

/// Integral over [0, length] of a single bounded term.
Complex integrate(const ExpTerm& term, double length);

/// Integral over [0, length] of exp(extra_rate z) * a(z) * b(z), without
/// materializing the product series.
Complex integrate_product(const ExpSeries& a, const ExpSeries& b, Complex extra_rate, double length);

}  // namespace sfwm
