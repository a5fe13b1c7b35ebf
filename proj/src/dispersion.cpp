#include "sfwm/dispersion.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace sfwm {

namespace {

// Malitson (1965) fused silica, wavelength in micrometres:
// n^2 - 1 = sum_i B_i l^2 / (l^2 - C_i^2)
constexpr std::array<double, 3> kSellmeierB = {0.6961663, 0.4079426, 0.8974794};
constexpr std::array<double, 3> kSellmeierC = {0.0684043, 0.1162414, 9.896161};

}  // namespace

std::string_view to_string(Polarization pol) { return pol == Polarization::x ? "x" : "y"; }

std::string_view to_string(Material material) {
  switch (material) {
    case Material::fused_silica_malitson:
      return "fused-silica-malitson";
  }
  return "unknown";
}

Material material_from_string(std::string_view name) {
  if (name == "fused-silica-malitson") return Material::fused_silica_malitson;
  throw std::invalid_argument("unknown material '" + std::string(name) + "'");
}

void FiberSpec::validate() const {
  if (!(length_m > 0.0)) throw std::invalid_argument("fiber.length_m: must be > 0");
  if (!(birefringence >= 0.0)) throw std::invalid_argument("fiber.birefringence: must be >= 0");
  if (!(window_min_nm > 0.0 && window_max_nm > window_min_nm))
    throw std::invalid_argument("fiber.validity_window_nm: need 0 < min < max");
  // The Sellmeier poles sit at 68 nm, 116 nm and 9.9 um.
  if (window_min_nm <= 200.0 || window_max_nm >= 5000.0)
    throw std::invalid_argument("fiber.validity_window_nm: must lie within (200, 5000) nm");
}

Fiber::Fiber(FiberSpec spec) : spec_(spec) { spec_.validate(); }

double Fiber::check_window(double lambda_nm) const {
  if (!(lambda_nm >= spec_.window_min_nm && lambda_nm <= spec_.window_max_nm)) {
    throw DomainError("wavelength " + std::to_string(lambda_nm) + " nm outside Sellmeier window [" +
                      std::to_string(spec_.window_min_nm) + ", " + std::to_string(spec_.window_max_nm) +
                      "] nm");
  }
  return lambda_nm;
}

double Fiber::index_squared(double lambda_um) const {
  const double l2 = lambda_um * lambda_um;
  double n2 = 1.0;
  for (std::size_t i = 0; i < kSellmeierB.size(); ++i) {
    n2 += kSellmeierB[i] * l2 / (l2 - kSellmeierC[i] * kSellmeierC[i]);
  }
  return n2;
}

double Fiber::refractive_index(double lambda_nm, Polarization pol) const {
  check_window(lambda_nm);
  const double n = std::sqrt(index_squared(lambda_nm * 1e-3));
  return pol == Polarization::x ? n + spec_.birefringence : n;
}

double Fiber::index_slope(double lambda_nm) const {
  check_window(lambda_nm);
  const double l = lambda_nm * 1e-3;
  const double l2 = l * l;
  // d(n^2)/dl = sum_i -2 B_i C_i^2 l / (l^2 - C_i^2)^2
  double dn2 = 0.0;
  for (std::size_t i = 0; i < kSellmeierB.size(); ++i) {
    const double c2 = kSellmeierC[i] * kSellmeierC[i];
    const double d = l2 - c2;
    dn2 += -2.0 * kSellmeierB[i] * c2 * l / (d * d);
  }
  const double n = std::sqrt(index_squared(l));
  return dn2 / (2.0 * n) * 1e-3;  // per um -> per nm
}

double Fiber::group_index(double lambda_nm, Polarization pol) const {
  return refractive_index(lambda_nm, pol) - lambda_nm * index_slope(lambda_nm);
}

double Fiber::wavevector(double omega, Polarization pol) const {
  return omega * refractive_index(nm_from_omega(omega), pol) / kSpeedOfLight;
}

double Fiber::inverse_group_velocity(double omega, Polarization pol) const {
  return group_index(nm_from_omega(omega), pol) / kSpeedOfLight;
}

double Fiber::group_velocity(double omega, Polarization pol) const {
  return 1.0 / inverse_group_velocity(omega, pol);
}

double Fiber::phase_mismatch_dual(double omega_x, double omega_y, double omega_1, double omega_2) const {
  const double in = wavevector(omega_x, Polarization::x) + wavevector(omega_y, Polarization::y);
  const double out = wavevector(omega_1, Polarization::x) + wavevector(omega_2, Polarization::y);
  return in - out;
}

double Fiber::phase_mismatch_single(double omega_p, double omega_1, double omega_2, Polarization pol) const {
  const double out = wavevector(omega_1, pol) + wavevector(omega_2, pol);
  return 2.0 * wavevector(omega_p, pol) - out;
}

PhaseMatchSolution Fiber::solve_pump_detuning(double lambda_d_nm, const RootOptions& options) const {
  check_window(lambda_d_nm);
  const double omega_d = omega_from_nm(lambda_d_nm);

  auto pumps = [&](double detuning_nm, bool x_blue) {
    const double omega_blue = omega_from_nm(lambda_d_nm - detuning_nm);
    const double d_omega = omega_blue - omega_d;
    const double omega_red = omega_d - d_omega;
    return x_blue ? std::pair{omega_blue, omega_red} : std::pair{omega_red, omega_blue};
  };
  auto mismatch = [&](double detuning_nm, bool x_blue) {
    const auto [wx, wy] = pumps(detuning_nm, x_blue);
    return phase_mismatch_dual(wx, wy, omega_d, omega_d);
  };

  // The paper's labelling (x pump red) first, then the swapped assignment.
  for (const bool x_blue : {false, true}) {
    constexpr int kScan = 64;
    double lo = options.bracket_min_nm;
    double f_lo = mismatch(lo, x_blue);
    double hi = lo;
    double f_hi = f_lo;
    bool bracketed = false;
    for (int i = 1; i <= kScan; ++i) {
      hi = options.bracket_min_nm + (options.bracket_max_nm - options.bracket_min_nm) * i / kScan;
      f_hi = mismatch(hi, x_blue);
      if (f_lo == 0.0 || std::signbit(f_lo) != std::signbit(f_hi)) {
        bracketed = true;
        break;
      }
      lo = hi;
      f_lo = f_hi;
    }
    if (!bracketed) continue;

    // Bisection safeguarding a secant step.
    double root = f_lo == 0.0 ? lo : 0.5 * (lo + hi);
    for (int it = 0; it < options.max_iterations && f_lo != 0.0; ++it) {
      double trial = hi - f_hi * (hi - lo) / (f_hi - f_lo);
      const double width = hi - lo;
      if (!(trial > lo && trial < hi)) trial = 0.5 * (lo + hi);
      double f_trial = mismatch(trial, x_blue);
      if (f_trial == 0.0) {
        root = trial;
        break;
      }
      if (std::signbit(f_trial) == std::signbit(f_lo)) {
        lo = trial;
        f_lo = f_trial;
      } else {
        hi = trial;
        f_hi = f_trial;
      }
      // Secant stalls on one side of a convex function; force a bisection.
      if (hi - lo > 0.5 * width) {
        const double mid = 0.5 * (lo + hi);
        const double f_mid = mismatch(mid, x_blue);
        if (std::signbit(f_mid) == std::signbit(f_lo)) {
          lo = mid;
          f_lo = f_mid;
        } else {
          hi = mid;
          f_hi = f_mid;
        }
      }
      root = std::abs(f_lo) < std::abs(f_hi) ? lo : hi;
      if (hi - lo < options.tolerance_nm * 1e-3) break;
    }

    const auto [wx, wy] = pumps(root, x_blue);
    PhaseMatchSolution out;
    out.lambda_pump_x_nm = nm_from_omega(wx);
    out.lambda_pump_y_nm = nm_from_omega(wy);
    out.lambda_degenerate_nm = lambda_d_nm;
    out.detuning_nm = root;
    out.x_pump_is_blue = x_blue;
    out.residual_mismatch = phase_mismatch_dual(wx, wy, omega_d, omega_d);
    return out;
  }
  throw PhysicsError("no phase-matched detuning in [" + std::to_string(options.bracket_min_nm) + ", " +
                     std::to_string(options.bracket_max_nm) + "] nm");
}

}  // namespace sfwm
