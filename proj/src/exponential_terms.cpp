#include "sfwm/exponential_terms.hpp"

#include <cmath>

namespace sfwm {

namespace {

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

Complex evaluate(const ExpSeries& series, double z) {
  Complex sum{0.0, 0.0};
  for (const auto& t : series) {
    sum += t.coeff * std::pow(z, t.power) * std::exp(t.rate * z + t.offset);
  }
  return sum;
}

ExpSeries conjugate(const ExpSeries& series) {
  ExpSeries out = series;
  for (auto& t : out) {
    t.coeff = std::conj(t.coeff);
    t.rate = std::conj(t.rate);
    t.offset = std::conj(t.offset);
  }
  return out;
}

ExpSeries multiply(const ExpSeries& a, const ExpSeries& b) {
  ExpSeries out;
  out.reserve(a.size() * b.size());
  for (const auto& ta : a) {
    for (const auto& tb : b) {
      out.push_back({ta.coeff * tb.coeff, ta.rate + tb.rate, ta.offset + tb.offset, ta.power + tb.power});
    }
  }
  return out;
}

Complex power_exp_integral(int power, Complex s, double length) {
  const Complex sl = s * length;
  if (std::abs(sl) < 2.0) {
    // sum_n s^n L^(n+p+1) / (n! (n+p+1))
    Complex term{std::pow(length, power + 1), 0.0};  // s^n L^(n+p+1) / n!
    Complex sum = term / double(power + 1);
    for (int n = 1; n < 80; ++n) {
      term *= sl / double(n);
      const Complex add = term / double(n + power + 1);
      sum += add;
      if (std::abs(add) <= 1e-18 * std::abs(sum)) break;
    }
    return sum;
  }
  // Upward recurrence K_j = (L^j e^{sL} - j K_{j-1}) / s, stable for |sL| >= 2
  // at the low powers used here.
  const Complex e = std::exp(sl);
  Complex k = expm1(sl) / s;
  double lj = 1.0;
  for (int j = 1; j <= power; ++j) {
    lj *= length;
    k = (lj * e - double(j) * k) / s;
  }
  return k;
}

Complex integrate(const ExpTerm& term, double length) {
  const int m = term.power;
  if (term.rate.real() > 0.0) {
    // z = L - u keeps the exponent non-positive.
    const Complex scale = std::exp(term.rate * length + term.offset);
    Complex sum{0.0, 0.0};
    double lpow = std::pow(length, m);
    for (int j = 0; j <= m; ++j) {
      const double sign = (j % 2 == 0) ? 1.0 : -1.0;
      sum += sign * binomial(m, j) * lpow * power_exp_integral(j, -term.rate, length);
      lpow = length != 0.0 ? lpow / length : 0.0;
    }
    return term.coeff * scale * sum;
  }
  return term.coeff * std::exp(term.offset) * power_exp_integral(m, term.rate, length);
}

Complex integrate_product(const ExpSeries& a, const ExpSeries& b, Complex extra_rate, double length) {
  Complex sum{0.0, 0.0};
  for (const auto& ta : a) {
    for (const auto& tb : b) {
      const ExpTerm t{ta.coeff * tb.coeff, ta.rate + tb.rate + extra_rate, ta.offset + tb.offset,
                      ta.power + tb.power};
      sum += integrate(t, length);
    }
  }
  return sum;
}

}  // namespace sfwm
