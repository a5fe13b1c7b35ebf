#pragma once

#include <optional>
#include <vector>

#include "sfwm/jointspectrum.hpp"

namespace sfwm {

/// Detector efficiencies, dark counts and a top-hat collection filter shared
/// by both polarizations.
struct DetectionConfig {
  double efficiency_x = 1.0;
  double efficiency_y = 1.0;
  double dark_counts_x = 0.0;  // per pulse
  double dark_counts_y = 0.0;
  std::optional<double> filter_center;  // rad/s; omega_d when empty
  double filter_width = 7.8e10;         // rad/s, full width

  void validate() const;

  /// The narrow-filter formulas need the filter inside the stop band:
  /// width <= 2 pi c d_lambda / lambda_d^2.
  void validate_against_stopband(double stopband_width_nm, double lambda_d_nm) const;
};

/// Model plus its three normalized process grids on a shared window.
struct SpectrumSet {
  SpectrumModel model;
  JointAmplitudeGrid xx;
  JointAmplitudeGrid yy;
  JointAmplitudeGrid xy;
};

SpectrumSet compute_spectra(const SpectrumModel& model, const GridOptions& options);

struct PointRatios {
  double r_x = 0.0;  // |phi_xx(w_d, w_Bx)|^2 / |phi_xy(w_d, w_d)|^2
  double r_y = 0.0;  // |phi_yy(w_By, w_d)|^2 / |phi_xy(w_d, w_d)|^2
  double xy_peak = 0.0;
  double xx_parasitic = 0.0;
  double yy_parasitic = 0.0;
  double omega_d = 0.0;
  double omega_bx = 0.0;  // energy-conserving parasitic partner 2 w_x - w_d
  double omega_by = 0.0;
};

/// Parasitic-to-desired ratios at the collection frequency, by direct point
/// evaluation with each grid's normalization.
PointRatios point_ratios(const SpectrumSet& spectra, std::optional<double> filter_center = std::nullopt);

struct Counts {
  double singles_x = 0.0;
  double singles_y = 0.0;
  double coincidences = 0.0;
};

/// Narrow-filter reduction: every |phi|^2 taken at the filter centre and its
/// energy-conserving partners, times Delta^2.
Counts counts_pointwise(double zeta_xy2, const DetectionConfig& detection, const SpectrumSet& spectra);

/// Filter passband integrated numerically; the partner photon, fixed by
/// energy conservation under quasi-cw pumping, contributes the factor Delta.
Counts counts_integrated(double zeta_xy2, const DetectionConfig& detection, const SpectrumSet& spectra);

/// N_xy / (N_x N_y).
double car_from_counts(const Counts& counts);

/// 1 / (zeta^2 (1 + 9/4 r_x)(1 + 9/4 r_y)).
double car(double zeta2, double r_x, double r_y);

struct CarCurve {
  std::vector<double> zeta2;
  std::vector<double> car;
  double r_x = 0.0;
  double r_y = 0.0;
  bool grating_enabled = false;
};

std::vector<double> log_space(double min, double max, std::size_t steps);

CarCurve car_sweep(const std::vector<double>& zeta2, const PointRatios& ratios, bool grating_enabled);

}  // namespace sfwm
