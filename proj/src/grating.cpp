#include "sfwm/grating.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace sfwm {

namespace {

constexpr double kSeriesThreshold = 1e-6;

}  // namespace

void GratingSpec::validate() const {
  if (centers_nm.empty() || centers_nm.size() > 2)
    throw std::invalid_argument("grating.stop_band_centers_nm: need 1 or 2 entries");
  for (double c : centers_nm) {
    if (!(c > 0.0)) throw std::invalid_argument("grating.stop_band_centers_nm: must be > 0");
  }
  if (centers_nm.size() == 2 && centers_nm[0] == centers_nm[1])
    throw std::invalid_argument("grating.stop_band_centers_nm: centers must differ");
  if (!(index_contrast >= 0.0)) throw std::invalid_argument("grating.index_contrast: must be >= 0");
  if (!(coupling_scale > 0.0 && coupling_scale <= 1.0))
    throw std::invalid_argument("grating.coupling_scale: must lie in (0, 1]");
  if (!(length_m > 0.0)) throw std::invalid_argument("grating.length_m: must be > 0");
}

double coupling(double lambda_b_nm, double index_contrast, double scale) {
  if (!(index_contrast >= 0.0)) throw std::invalid_argument("index contrast must be >= 0");
  return scale * 4.0 * index_contrast / (lambda_b_nm * 1e-9);
}

double stopband_width_nm(double lambda_b_nm, double kappa, double index) {
  const double lambda_m = lambda_b_nm * 1e-9;
  return lambda_m * lambda_m * kappa / (kPi * index) * 1e9;
}

GratingResponse grating_response(double delta, double kappa, double length, double z) {
  return GratingProfile(delta, kappa, length).at(z);
}

// G+ = e^{i delta L} [C(z) + i delta z S(z)] / [C(L) + i delta L S(L)]
// G- = -i kappa z e^{i delta L} S(z) / [C(L) + i delta L S(L)]
// with C = cosh(xi z), S = sinh(xi z)/(xi z), both times exp(-xi L) in the
// general branch. For imaginary xi that factor is a common phase and cancels.
GratingProfile::GratingProfile(double delta, double kappa, double length)
    : delta_(delta), kappa_(kappa), length_(length), xi_(stopband_xi(kappa, delta)),
      xi2_((kappa - delta) * (kappa + delta)), series_(std::abs(xi_) * length < kSeriesThreshold) {
  const Complex denom = scaled_cosh(length) + kI * (delta * length) * scaled_sinhc(length);
  numerator_scale_ = std::exp(kI * (delta * length)) / denom;
}

Complex GratingProfile::scaled_cosh(double t) const {
  if (series_) return 1.0 + 0.5 * xi2_ * t * t;
  return 0.5 * (std::exp(xi_ * (t - length_)) + std::exp(-xi_ * (t + length_)));
}

Complex GratingProfile::scaled_sinhc(double t) const {
  if (series_) return 1.0 + xi2_ * t * t / 6.0;
  if (t == 0.0) return std::exp(-xi_ * length_);
  // sinh(xi t) e^{-xi L} = -e^{xi (t - L)} expm1(-2 xi t) / 2
  return -0.5 * std::exp(xi_ * (t - length_)) * expm1(-2.0 * xi_ * t) / (xi_ * t);
}

GratingResponse GratingProfile::at(double z) const {
  if (!(z >= 0.0 && z <= length_)) {
    throw DomainError("grating position z = " + std::to_string(z) + " m outside [0, " + std::to_string(length_) +
                      "] m");
  }
  GratingResponse r;
  r.delta = delta_;
  r.kappa = kappa_;
  r.xi = xi_;
  const Complex s_z = scaled_sinhc(z);
  r.g_plus = numerator_scale_ * (scaled_cosh(z) + kI * (delta_ * z) * s_z);
  r.g_minus = -kI * (kappa_ * z) * numerator_scale_ * s_z;
  return r;
}

Complex GratingProfile::envelope(double z) const {
  return at(z).g_plus * std::exp(-kI * (delta_ * z));
}

BraggBand::BraggBand(const Fiber& fiber, double center_nm, double kappa)
    : fiber_(fiber), center_nm_(center_nm), center_omega_(omega_from_nm(center_nm)), kappa_(kappa) {
  // Fails early if the band itself lies outside the dispersion model.
  (void)fiber_.refractive_index(center_nm_, Polarization::y);
}

double BraggBand::detuning(double omega, Polarization pol) const {
  if (omega == center_omega_) return 0.0;
  return fiber_.wavevector(omega, pol) - fiber_.wavevector(center_omega_, pol);
}

double BraggBand::period_nm(Polarization pol) const {
  return kPi / fiber_.wavevector(center_omega_, pol) * 1e9;
}

double BraggBand::stopband_width_nm() const {
  return sfwm::stopband_width_nm(center_nm_, kappa_, fiber_.refractive_index(center_nm_, Polarization::y));
}

GratingResponse BraggBand::response(double omega, Polarization pol, double z) const {
  return grating_response(detuning(omega, pol), kappa_, length(), z);
}

ExpSeries BraggBand::envelope_terms(double omega, Polarization pol) const {
  const double delta = detuning(omega, pol);
  const double len = length();
  const Complex xi = stopband_xi(kappa_, delta);
  const Complex phase = std::exp(kI * (delta * len));
  const Complex drift{0.0, -delta};

  if (std::abs(xi) * len < kSeriesThreshold) {
    // G+ ~ e^{i delta L} (1 + i delta z) / (1 + i delta L)
    const Complex pre = phase / (1.0 + kI * (delta * len));
    return {ExpTerm{pre, drift, 0.0, 0}, ExpTerm{pre * kI * delta, drift, 0.0, 1}};
  }
  // G+ = e^{i delta L} / D [ (1 + i delta/xi)/2 e^{xi (z - L)} + (1 - i delta/xi)/2 e^{-xi (z + L)} ]
  // D = [xi (1 + e^{-2 xi L}) + i delta (1 - e^{-2 xi L})] / (2 xi)
  const Complex e2 = std::exp(-2.0 * xi * len);
  const Complex denom = (xi * (1.0 + e2) - kI * delta * expm1(-2.0 * xi * len)) / (2.0 * xi);
  const Complex pre = phase / denom;
  const Complex ratio = kI * delta / xi;
  return {ExpTerm{0.5 * pre * (1.0 + ratio), xi + drift, -xi * len, 0},
          ExpTerm{0.5 * pre * (1.0 - ratio), -xi + drift, -xi * len, 0}};
}

Grating::Grating(const Fiber& fiber, GratingSpec spec) : fiber_(fiber), spec_(std::move(spec)) {
  spec_.validate();
  for (double center : spec_.centers_nm) {
    bands_.emplace_back(fiber_, center, coupling(center, spec_.index_contrast, spec_.coupling_scale));
  }
}

const BraggBand& Grating::nearest_band(double omega) const {
  const BraggBand* best = &bands_.front();
  for (const auto& band : bands_) {
    const double d = std::abs(omega - band.center_omega());
    const double d_best = std::abs(omega - best->center_omega());
    if (d < d_best || (d == d_best && band.center_omega() < best->center_omega())) best = &band;
  }
  return *best;
}

GratingResponse Grating::response(double omega, Polarization pol, double z) const {
  const BraggBand& near = nearest_band(omega);
  GratingResponse r = near.response(omega, pol, z);
  for (const auto& band : bands_) {
    if (&band == &near) continue;
    const GratingResponse other = band.response(omega, pol, z);
    const Complex factor = other.g_plus * std::exp(-kI * (other.delta * z));
    r.g_plus *= factor;
    r.g_minus *= factor;
  }
  return r;
}

Complex Grating::envelope(double omega, Polarization pol, double z) const {
  Complex g{1.0, 0.0};
  for (const auto& band : bands_) {
    const GratingResponse r = band.response(omega, pol, z);
    g *= r.g_plus * std::exp(-kI * (r.delta * z));
  }
  return g;
}

ExpSeries Grating::envelope_terms(double omega, Polarization pol) const {
  ExpSeries g{ExpTerm{}};
  for (const auto& band : bands_) g = multiply(g, band.envelope_terms(omega, pol));
  return g;
}

double Grating::carrier_period_nm(Polarization pol) const {
  double k_sum = 0.0;
  for (const auto& band : bands_) k_sum += fiber_.wavevector(band.center_omega(), pol);
  return kPi / (k_sum / double(bands_.size())) * 1e9;
}

}  // namespace sfwm
