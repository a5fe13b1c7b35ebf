#include <doctest.h>

#include <cmath>
#include <string>

#include "sfwm/dispersion.hpp"
#include "sfwm/units.hpp"

using namespace sfwm;

namespace {

// Reference values from an independent 50-digit evaluation of the Malitson
// fused-silica Sellmeier form.
constexpr double kIndex1540 = 1.4441432363602278;
constexpr double kIndex1550 = 1.4440236217032609;
constexpr double kIndex1560 = 1.443903583261675;
constexpr double kWavevector1550 = 5853592.2600685048;  // rad/m, y
constexpr double kGroupIndex1550 = 1.4625964838941499;
constexpr double kBeta2At1550 = -2.794736614e-26;  // s^2/m

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_CASE("Sellmeier index matches reference values") {
  const Fiber fiber;
  CHECK(rel(fiber.refractive_index(1540.0, Polarization::y), kIndex1540) < 1e-14);
  CHECK(rel(fiber.refractive_index(1550.0, Polarization::y), kIndex1550) < 1e-14);
  CHECK(rel(fiber.refractive_index(1560.0, Polarization::y), kIndex1560) < 1e-14);
}

TEST_CASE("birefringence is an additive offset on x") {
  const Fiber fiber;
  const double d = fiber.refractive_index(1550.0, Polarization::x) - fiber.refractive_index(1550.0, Polarization::y);
  CHECK(d == doctest::Approx(3.3e-5).epsilon(1e-10));

  FiberSpec spec;
  spec.birefringence = 0.0;
  const Fiber iso(spec);
  for (double lambda : {1300.0, 1550.0, 1650.0}) {
    CHECK(iso.refractive_index(lambda, Polarization::x) == iso.refractive_index(lambda, Polarization::y));
  }
}

TEST_CASE("wavevector and period scale") {
  const Fiber fiber;
  const double k = fiber.wavevector(omega_from_nm(1550.0), Polarization::y);
  CHECK(rel(k, kWavevector1550) < 1e-13);
  CHECK(kPi / k * 1e9 == doctest::Approx(536.6).epsilon(2e-4));

  double prev = 0.0;
  for (int i = 0; i <= 500; ++i) {
    const double kk = fiber.wavevector(omega_from_nm(1700.0 - i), Polarization::x);
    CHECK(kk > prev);
    prev = kk;
  }
}

TEST_CASE("group index and dispersion") {
  const Fiber fiber;
  const double w = omega_from_nm(1550.0);
  CHECK(rel(fiber.group_index(1550.0, Polarization::y), kGroupIndex1550) < 1e-12);
  CHECK(rel(fiber.group_velocity(w, Polarization::y), kSpeedOfLight / kGroupIndex1550) < 1e-12);

  const double h = w * 1e-4;
  const double beta2 = (fiber.inverse_group_velocity(w + h, Polarization::y) -
                        fiber.inverse_group_velocity(w - h, Polarization::y)) / (2.0 * h);
  CHECK(rel(beta2, kBeta2At1550) < 1e-5);
}

TEST_CASE("analytic dk/domega agrees with finite differences at 64 wavelengths") {
  const Fiber fiber;
  for (int i = 0; i < 64; ++i) {
    const double lambda = 1210.0 + 480.0 * i / 63.0;
    const double w = omega_from_nm(lambda);
    const double h = w * 1e-5;
    for (auto pol : {Polarization::x, Polarization::y}) {
      const double fd = (fiber.wavevector(w + h, pol) - fiber.wavevector(w - h, pol)) / (2.0 * h);
      CHECK(rel(fiber.inverse_group_velocity(w, pol), fd) < 1e-8);
      CHECK(fiber.group_velocity(w, pol) < kSpeedOfLight);
    }
  }
}

TEST_CASE("wavelengths outside the validity window are rejected") {
  const Fiber fiber;
  CHECK_THROWS_AS(fiber.refractive_index(1100.0, Polarization::y), DomainError);
  CHECK_THROWS_AS(fiber.wavevector(omega_from_nm(1800.0), Polarization::x), DomainError);
  CHECK_NOTHROW(fiber.refractive_index(1200.0, Polarization::y));
  CHECK_NOTHROW(fiber.refractive_index(1700.0, Polarization::y));
}

TEST_CASE("fiber spec validation names the field") {
  FiberSpec spec;
  spec.length_m = -1.0;
  try {
    spec.validate();
    FAIL("negative length accepted");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("fiber.length_m") != std::string::npos);
  }
}

TEST_CASE("dual-pump mismatch") {
  const Fiber fiber;
  const double w = omega_from_nm(1550.0);
  CHECK(fiber.phase_mismatch_dual(w, w, w, w) == 0.0);

  const double w1555 = omega_from_nm(1555.0);
  const double w1545 = omega_from_nm(1545.0);
  const double wd = 0.5 * (w1555 + w1545);
  const double tolerance = 2.0 * kPi / fiber.length();
  // Either polarization assignment of the 1545/1555 pair lies inside the phase-matching bandwidth.
  CHECK(std::abs(fiber.phase_mismatch_dual(w1555, w1545, wd, wd)) < tolerance);
  CHECK(std::abs(fiber.phase_mismatch_dual(w1545, w1555, wd, wd)) < tolerance);

  // Swapping the pump polarizations flips the birefringent contribution.
  const double a = fiber.phase_mismatch_dual(w1555, w1545, wd, wd);
  const double b = fiber.phase_mismatch_dual(w1545, w1555, wd, wd);
  const double expected = 3.3e-5 * (w1555 - w1545) / kSpeedOfLight;  // a - b
  CHECK(a - b == doctest::Approx(expected).epsilon(1e-6));
}

TEST_CASE("single-pump mismatch") {
  const Fiber fiber;
  const double tolerance = 2.0 * kPi / fiber.length();
  const double wd = omega_from_nm(1550.0);
  for (auto [pump_nm, pol] : {std::pair{1555.0, Polarization::x}, std::pair{1545.0, Polarization::y},
                              std::pair{1555.0, Polarization::y}, std::pair{1545.0, Polarization::x}}) {
    const double wp = omega_from_nm(pump_nm);
    const double partner = 2.0 * wp - wd;
    CHECK(std::abs(fiber.phase_mismatch_single(wp, wd, partner, pol)) < 0.01 * tolerance);
    CHECK(fiber.phase_mismatch_single(wp, wd, partner, pol) == fiber.phase_mismatch_single(wp, partner, wd, pol));
    CHECK(fiber.phase_mismatch_single(wp, wp, wp, pol) == 0.0);
  }
  CHECK(std::abs(nm_from_omega(2.0 * omega_from_nm(1555.0) - wd) - 1560.0) < 0.05);
  CHECK(std::abs(nm_from_omega(2.0 * omega_from_nm(1545.0) - wd) - 1540.0) < 0.05);

  // Birefringence cancels for a same-polarization process.
  FiberSpec spec;
  spec.birefringence = 0.0;
  const Fiber iso(spec);
  const double wp = omega_from_nm(1555.0);
  const double partner = 2.0 * wp - wd;
  CHECK(iso.phase_mismatch_single(wp, wd, partner, Polarization::y) ==
        fiber.phase_mismatch_single(wp, wd, partner, Polarization::y));
  CHECK(iso.phase_mismatch_single(wp, wd, partner, Polarization::x) ==
        doctest::Approx(fiber.phase_mismatch_single(wp, wd, partner, Polarization::x)).epsilon(1e-6).scale(1.0));
}

TEST_CASE("pump detuning solver") {
  const Fiber fiber;
  const PhaseMatchSolution s = fiber.solve_pump_detuning(1550.0);
  CHECK(s.x_pump_is_blue);
  CHECK(s.lambda_pump_x_nm == doctest::Approx(1544.9927).epsilon(1e-7));
  CHECK(s.lambda_pump_y_nm == doctest::Approx(1555.0398).epsilon(1e-7));
  CHECK(std::abs(s.lambda_pump_x_nm - 1545.0) < 0.3);
  CHECK(std::abs(s.lambda_pump_y_nm - 1555.0) < 0.3);
  CHECK(std::abs(s.residual_mismatch) < 1e-3);
  const double energy = 1.0 / s.lambda_pump_x_nm + 1.0 / s.lambda_pump_y_nm;
  CHECK(std::abs(energy - 2.0 / 1550.0) / (2.0 / 1550.0) < 1e-12);

  FiberSpec spec;
  spec.birefringence = 0.0;
  const Fiber iso(spec);
  try {
    iso.solve_pump_detuning(1550.0);
    FAIL("isotropic fiber returned a solution");
  } catch (const PhysicsError& e) {
    CHECK(std::string(e.what()).find("no phase-matched detuning") != std::string::npos);
  }
}
