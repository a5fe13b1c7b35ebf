#pragma once

#include <string>
#include <string_view>

#include "sfwm/units.hpp"

namespace sfwm {

enum class Polarization { x, y };

std::string_view to_string(Polarization pol);

enum class Material { fused_silica_malitson };

std::string_view to_string(Material material);
Material material_from_string(std::string_view name);

/// Geometry and material of the nonlinear medium.
///
/// The birefringence is a frequency-independent index offset carried by the
/// x polarization; y sees the bare material index.
struct FiberSpec {
  double length_m = 0.05;
  Material material = Material::fused_silica_malitson;
  double birefringence = 3.3e-5;
  double window_min_nm = 1200.0;
  double window_max_nm = 1700.0;

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
};

/// Pump pair found by solve_pump_detuning().
struct PhaseMatchSolution {
  double lambda_pump_x_nm = 0.0;
  double lambda_pump_y_nm = 0.0;
  double lambda_degenerate_nm = 0.0;
  double detuning_nm = 0.0;        // blue pump sits at lambda_degenerate - detuning
  bool x_pump_is_blue = false;     // which polarization carries the higher-frequency pump
  double residual_mismatch = 0.0;  // rad/m, phase_mismatch_dual at the returned pumps
};

struct RootOptions {
  double bracket_min_nm = 0.05;
  double bracket_max_nm = 25.0;
  double tolerance_nm = 1e-4;
  int max_iterations = 200;
};

/// Material plus birefringence dispersion of a weakly birefringent fiber.
/// Immutable; all members are safe for concurrent use.
class Fiber {
 public:
  explicit Fiber(FiberSpec spec = {});

  const FiberSpec& spec() const { return spec_; }
  double length() const { return spec_.length_m; }

  /// Sellmeier index at a vacuum wavelength; x adds the birefringence.
  double refractive_index(double lambda_nm, Polarization pol) const;

  /// dn/dlambda in 1/nm (identical for both polarizations).
  double index_slope(double lambda_nm) const;

  double group_index(double lambda_nm, Polarization pol) const;

  /// k = omega n / c in rad/m.
  double wavevector(double omega, Polarization pol) const;

  /// dk/domega in s/m, from the analytic derivative of the Sellmeier form.
  double inverse_group_velocity(double omega, Polarization pol) const;

  double group_velocity(double omega, Polarization pol) const;

  /// kx(wx) + ky(wy) - kx(w1) - ky(w2).
  double phase_mismatch_dual(double omega_x, double omega_y, double omega_1, double omega_2) const;

  /// 2 k(wp) - k(w1) - k(w2), all in one polarization.
  double phase_mismatch_single(double omega_p, double omega_1, double omega_2, Polarization pol) const;

  /// Finds pumps at omega_d +/- d_omega (energy conservation exact) that phase
  /// match degenerate dual-pump pairs at lambda_d. Throws PhysicsError if no
  /// sign change exists in the bracket for either pump orientation.
  PhaseMatchSolution solve_pump_detuning(double lambda_d_nm, const RootOptions& options = {}) const;

 private:
  double check_window(double lambda_nm) const;
  double index_squared(double lambda_um) const;

  FiberSpec spec_;
};

}  // namespace sfwm
