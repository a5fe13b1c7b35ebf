#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "sfwm/complex_math.hpp"
#include "sfwm/dispersion.hpp"
#include "sfwm/grating.hpp"

namespace sfwm {

/// The three coherent SFWM processes: two single-pump (parasitic) and the
/// cross-polarized dual-pump one.
enum class Process { xx, yy, xy };

std::string_view to_string(Process process);
Process process_from_string(std::string_view name);

/// Two equal-power, transform-limited Gaussian quasi-cw pumps.
struct PumpConfig {
  double lambda_x_nm = 1545.0;
  double lambda_y_nm = 1555.0;
  double duration_fwhm_s = 10e-12;  // intensity FWHM

  void validate() const;

  double omega_x() const { return omega_from_nm(lambda_x_nm); }
  double omega_y() const { return omega_from_nm(lambda_y_nm); }
  /// Degenerate dual-pump frequency (omega_x + omega_y) / 2.
  double omega_d() const { return 0.5 * (omega_x() + omega_y()); }
};

/// Pump spectral amplitude alpha(detuning) = exp(-detuning^2 T^2 / (8 ln 2)).
double pump_amplitude(double detuning, double duration_fwhm_s);

enum class Backend { closed_form, quadrature };

std::string_view to_string(Backend backend);
Backend backend_from_string(std::string_view name);

/// Pump and output assignment of one process.
struct ProcessGeometry {
  Polarization out_1;
  Polarization out_2;
  double pump_1;  // rad/s, pump driving the out_1 field's partner process
  double pump_2;
};

/// Point evaluation of the (unnormalized) phase-matching function J and the
/// joint spectral amplitude alpha * J for a fiber with an optional grating.
/// Pumps are plane waves at their centre frequencies.
class SpectrumModel {
 public:
  SpectrumModel(const Fiber& fiber, const PumpConfig& pumps, const std::optional<GratingSpec>& grating);

  const Fiber& fiber() const { return fiber_; }
  const PumpConfig& pumps() const { return pumps_; }
  const Grating* grating() const { return grating_ ? &*grating_ : nullptr; }
  double length() const { return fiber_.length(); }

  ProcessGeometry geometry(Process process) const;

  /// Energy-conserving partner of omega_1 for this process.
  double partner(Process process, double omega_1) const;

  /// k_a(omega_a) + k_b(omega_b) - k_a(omega_1) - k_b(omega_2).
  double phase_mismatch(Process process, double omega_1, double omega_2) const;

  /// Forward envelope relative to the local plane wave; 1 without a grating.
  Complex envelope(double omega, Polarization pol, double z) const;
  ExpSeries envelope_terms(double omega, Polarization pol) const;

  Complex j_closed_form(Process process, double omega_1, double omega_2) const;

  /// Composite 16-point Gauss-Legendre. panels = 0 picks the default count.
  Complex j_quadrature(Process process, double omega_1, double omega_2, std::size_t panels = 0) const;

  std::size_t default_panels(Process process, double omega_1, double omega_2) const;

  Complex j(Process process, double omega_1, double omega_2, Backend backend) const;

  /// alpha(omega_1 + omega_2 - omega_a - omega_b) * J.
  Complex amplitude(Process process, double omega_1, double omega_2, Backend backend) const;

 private:
  double input_wavevector(Process process) const;

  Fiber fiber_;
  PumpConfig pumps_;
  std::optional<Grating> grating_;
  double k_in_xx_;
  double k_in_yy_;
  double k_in_xy_;
};

/// Uniform angular-frequency axis spanning [lambda_min, lambda_max], increasing in omega.
std::vector<double> frequency_axis(double lambda_min_nm, double lambda_max_nm, std::size_t points);

struct GridOptions {
  double lambda_min_nm = 1535.0;
  double lambda_max_nm = 1565.0;
  std::size_t points = 1001;
  Backend backend = Backend::closed_form;
  unsigned threads = 1;  // 0 = hardware concurrency
};

/// Discretized phi_ab(omega_1, omega_2), row-major with rows along axis_1.
struct JointAmplitudeGrid {
  Process process = Process::xy;
  std::vector<double> axis_1;
  std::vector<double> axis_2;
  std::vector<Complex> values;
  bool normalized = false;
  /// Riemann norm of the raw alpha*J grid; normalized values are raw / sqrt(normalization).
  double normalization = 1.0;
  double boundary_fraction = 0.0;  // share of the norm in the outermost rows and columns
  bool boundary_warning = false;   // boundary_fraction > 1e-3
  /// With the pumps held at their centres, J oscillates in omega_1 + omega_2
  /// with period 2 pi / (k' L); coarser cells alias the normalization.
  double resolution_limit = 0.0;  // rad/s
  bool resolution_warning = false;

  std::size_t rows() const { return axis_1.size(); }
  std::size_t cols() const { return axis_2.size(); }
  const Complex& at(std::size_t i, std::size_t j) const { return values[i * cols() + j]; }
  double cell_area() const;
};

inline constexpr double kBoundaryMassThreshold = 1e-3;

/// Evaluates alpha*J on the grid and normalizes it. Rows may run in parallel;
/// the output does not depend on the thread count.
JointAmplitudeGrid jsa_grid(const SpectrumModel& model, Process process, const GridOptions& options);

/// sum |phi|^2 d omega_1 d omega_2, accumulated in a fixed order.
double grid_norm(const JointAmplitudeGrid& grid);

/// Rescales so grid_norm() == 1 and folds the factor into `normalization`.
void normalize(JointAmplitudeGrid& grid);

/// phi at an arbitrary point using the grid's normalization (no interpolation).
Complex normalized_amplitude(const SpectrumModel& model, const JointAmplitudeGrid& grid, double omega_1,
                             double omega_2, Backend backend = Backend::closed_form);

/// Composite joint spectral intensity.
struct JsiGrid {
  std::vector<double> axis_1;
  std::vector<double> axis_2;
  std::vector<double> values;

  std::size_t rows() const { return axis_1.size(); }
  std::size_t cols() const { return axis_2.size(); }
  double at(std::size_t i, std::size_t j) const { return values[i * cols() + j]; }
};

/// (9 |phi_xx|^2 + 9 |phi_yy|^2 + 8 |phi_xy|^2) / 26 on normalized grids.
JsiGrid jsi(const JointAmplitudeGrid& xx, const JointAmplitudeGrid& yy, const JointAmplitudeGrid& xy);

/// |phi|^2 of a single process as a JSI-shaped grid.
JsiGrid intensity(const JointAmplitudeGrid& grid);

double jsi_norm(const JsiGrid& grid);

/// Mean pairs per pulse, 13/4 |zeta_xy|^2.
double pair_rate(double zeta_xy2);

}  // namespace sfwm
