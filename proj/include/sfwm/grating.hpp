#pragma once

#include <vector>

#include "sfwm/complex_math.hpp"
#include "sfwm/dispersion.hpp"
#include "sfwm/exponential_terms.hpp"

namespace sfwm {

/// One or two superposed Bragg gratings spanning the whole fiber.
struct GratingSpec {
  std::vector<double> centers_nm{1540.0, 1560.0};
  double index_contrast = 2.1e-3;
  double coupling_scale = 0.5;  // per band; a two-band moire halves each coupling
  double length_m = 0.05;

  void validate() const;
};

/// Asymptotic-out envelopes at one (omega, z):
///   f_out(z) = G+ e^{i k(omega_B) z} + G- e^{-i k(omega_B) z}
struct GratingResponse {
  Complex g_plus;
  Complex g_minus;
  double delta = 0.0;  // rad/m
  Complex xi;          // rad/m, Re >= 0
  double kappa = 0.0;  // rad/m
};

/// kappa = scale * 2 omega_B dn / (pi c) = scale * 4 dn / lambda_B, in rad/m.
double coupling(double lambda_b_nm, double index_contrast, double scale);

/// Full stop-band width lambda_B^2 kappa / (pi n), in nm.
double stopband_width_nm(double lambda_b_nm, double kappa, double index);

/// G+ and G- of a uniform grating of strength kappa and length L at detuning
/// delta. Hyperbolics are scaled by exp(-Re(xi) L) so kappa L in the hundreds
/// stays finite; |xi L| < 1e-6 switches to the band-edge series.
GratingResponse grating_response(double delta, double kappa, double length, double z);

/// grating_response at fixed (delta, kappa, L) for many z; the z-independent
/// denominator is formed once.
class GratingProfile {
 public:
  GratingProfile(double delta, double kappa, double length);

  GratingResponse at(double z) const;

  /// G+ e^{-i delta z}, the forward envelope without its carrier.
  Complex envelope(double z) const;

 private:
  Complex scaled_cosh(double z) const;
  Complex scaled_sinhc(double z) const;

  double delta_;
  double kappa_;
  double length_;
  Complex xi_;
  double xi2_;
  bool series_;
  Complex numerator_scale_;  // e^{i delta L} / denominator
};

/// A single stop band of a grating written into a given fiber.
class BraggBand {
 public:
  BraggBand(const Fiber& fiber, double center_nm, double kappa);

  double center_nm() const { return center_nm_; }
  double center_omega() const { return center_omega_; }
  double kappa() const { return kappa_; }
  double length() const { return fiber_.length(); }

  /// k_pol(omega) - k_pol(omega_B).
  double detuning(double omega, Polarization pol) const;

  /// pi / k_pol(omega_B), in nm.
  double period_nm(Polarization pol) const;

  double stopband_width_nm() const;

  GratingResponse response(double omega, Polarization pol, double z) const;

  /// G+(z) e^{-i delta z} as exponential terms (closed-form integration).
  ExpSeries envelope_terms(double omega, Polarization pol) const;

 private:
  Fiber fiber_;
  double center_nm_;
  double center_omega_;
  double kappa_;
};

/// Single-band or moire (dual stop-band) grating.
///
/// The moire forward envelope is the product of the single-band envelopes,
/// each relative to its own plane wave, carried on the nearest band's
/// wavevector. With one band this is exactly grating_response().
class Grating {
 public:
  Grating(const Fiber& fiber, GratingSpec spec);

  const GratingSpec& spec() const { return spec_; }
  const std::vector<BraggBand>& bands() const { return bands_; }
  double length() const { return spec_.length_m; }

  /// Nearest stop band in frequency; an exact tie goes to the lower frequency.
  const BraggBand& nearest_band(double omega) const;

  GratingResponse response(double omega, Polarization pol, double z) const;

  /// Forward envelope relative to the local plane wave, g = f_out,+ e^{-i k(omega) z},
  /// evaluated pointwise from the band responses.
  Complex envelope(double omega, Polarization pol, double z) const;

  /// The same envelope as exponential terms.
  ExpSeries envelope_terms(double omega, Polarization pol) const;

  /// Carrier period of the superposed index profile, pi / mean(k(omega_B)), in nm.
  double carrier_period_nm(Polarization pol) const;

 private:
  Fiber fiber_;
  GratingSpec spec_;
  std::vector<BraggBand> bands_;
};

}  // namespace sfwm
