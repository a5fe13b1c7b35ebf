#include "sfwm/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "sfwm/quadrature.hpp"

namespace sfwm {

namespace {

constexpr double kParasiticWeight = 9.0 / 4.0;

double intensity_at(const SpectrumSet& s, const JointAmplitudeGrid& grid, double w1, double w2) {
  return std::norm(normalized_amplitude(s.model, grid, w1, w2));
}

void require_on_grid(const JointAmplitudeGrid& grid, double w, const char* what) {
  const double lo = std::min(grid.axis_1.front(), grid.axis_2.front());
  const double hi = std::max(grid.axis_1.back(), grid.axis_2.back());
  if (!(w >= lo && w <= hi)) {
    throw DomainError(std::string(what) + " at " + std::to_string(nm_from_omega(w)) +
                      " nm lies outside the grid window");
  }
}

double filter_center(const DetectionConfig& det, const SpectrumSet& s) {
  return det.filter_center.value_or(s.model.pumps().omega_d());
}

}  // namespace

void DetectionConfig::validate() const {
  if (!(efficiency_x >= 0.0 && efficiency_x <= 1.0))
    throw std::invalid_argument("detection.efficiency_x: must lie in [0, 1]");
  if (!(efficiency_y >= 0.0 && efficiency_y <= 1.0))
    throw std::invalid_argument("detection.efficiency_y: must lie in [0, 1]");
  if (!(dark_counts_x >= 0.0)) throw std::invalid_argument("detection.dark_counts_x: must be >= 0");
  if (!(dark_counts_y >= 0.0)) throw std::invalid_argument("detection.dark_counts_y: must be >= 0");
  if (!(filter_width > 0.0)) throw std::invalid_argument("detection.filter_width_rad_s: must be > 0");
  if (filter_center && !(*filter_center > 0.0))
    throw std::invalid_argument("detection.filter_center_nm: must be > 0");
}

void DetectionConfig::validate_against_stopband(double stopband_width_nm, double lambda_d_nm) const {
  const double lambda_d = lambda_d_nm * 1e-9;
  const double bound = 2.0 * kPi * kSpeedOfLight * stopband_width_nm * 1e-9 / (lambda_d * lambda_d);
  if (filter_width > bound) {
    throw std::invalid_argument("detection.filter_width_rad_s: " + std::to_string(filter_width) +
                                " exceeds the stop-band bound " + std::to_string(bound) + " rad/s");
  }
}

SpectrumSet compute_spectra(const SpectrumModel& model, const GridOptions& options) {
  SpectrumSet s{model, {}, {}, {}};
  s.xx = jsa_grid(model, Process::xx, options);
  s.yy = jsa_grid(model, Process::yy, options);
  s.xy = jsa_grid(model, Process::xy, options);
  return s;
}

PointRatios point_ratios(const SpectrumSet& s, std::optional<double> center) {
  PointRatios p;
  p.omega_d = center.value_or(s.model.pumps().omega_d());
  p.omega_bx = s.model.partner(Process::xx, p.omega_d);
  p.omega_by = s.model.partner(Process::yy, p.omega_d);
  const double w_xy = s.model.partner(Process::xy, p.omega_d);
  require_on_grid(s.xy, p.omega_d, "collection frequency");
  require_on_grid(s.xx, p.omega_bx, "x parasitic partner");
  require_on_grid(s.yy, p.omega_by, "y parasitic partner");

  p.xy_peak = intensity_at(s, s.xy, p.omega_d, w_xy);
  if (!(p.xy_peak > 0.0)) throw PhysicsError("|phi_xy(w_d, w_d)|^2 = 0: degenerate configuration");
  p.xx_parasitic = intensity_at(s, s.xx, p.omega_d, p.omega_bx);
  p.yy_parasitic = intensity_at(s, s.yy, p.omega_by, p.omega_d);
  p.r_x = p.xx_parasitic / p.xy_peak;
  p.r_y = p.yy_parasitic / p.xy_peak;
  return p;
}

Counts counts_pointwise(double zeta_xy2, const DetectionConfig& det, const SpectrumSet& s) {
  det.validate();
  const double w = filter_center(det, s);
  const double w_xy = s.model.partner(Process::xy, w);
  const double area = det.filter_width * det.filter_width;
  const double desired = intensity_at(s, s.xy, w, w_xy);
  const double par_x = intensity_at(s, s.xx, w, s.model.partner(Process::xx, w));
  const double par_y = intensity_at(s, s.yy, s.model.partner(Process::yy, w), w);
  const double desired_y = intensity_at(s, s.xy, w_xy, w);

  Counts c;
  c.singles_x = det.dark_counts_x + det.efficiency_x * zeta_xy2 * area * (desired + kParasiticWeight * par_x);
  c.singles_y = det.dark_counts_y + det.efficiency_y * zeta_xy2 * area * (desired_y + kParasiticWeight * par_y);
  c.coincidences = det.efficiency_x * det.efficiency_y * zeta_xy2 * area * desired;
  return c;
}

Counts counts_integrated(double zeta_xy2, const DetectionConfig& det, const SpectrumSet& s) {
  det.validate();
  const double w = filter_center(det, s);
  const double half = 0.5 * det.filter_width;
  const double lo = w - half;
  const double hi = w + half;
  const SpectrumModel& m = s.model;

  for (double edge : {lo, hi}) {
    require_on_grid(s.xy, edge, "filter edge");
    require_on_grid(s.xy, m.partner(Process::xy, edge), "xy partner of filter edge");
    require_on_grid(s.xx, m.partner(Process::xx, edge), "xx partner of filter edge");
    require_on_grid(s.yy, m.partner(Process::yy, edge), "yy partner of filter edge");
  }

  static const GaussLegendreRule rule = gauss_legendre(16);
  const double cell = s.xy.axis_1[1] - s.xy.axis_1[0];
  auto integrate = [&](double a, double b, auto&& f) {
    if (!(b > a)) return 0.0;
    const auto panels = static_cast<std::size_t>(std::max(1.0, std::ceil((b - a) / cell)));
    double sum = 0.0;
    for_each_composite_node(rule, a, b, panels, [&](double x, double wt) { sum += wt * f(x); });
    return sum;
  };

  const double sx = integrate(lo, hi, [&](double v) {
    return intensity_at(s, s.xy, v, m.partner(Process::xy, v)) +
           kParasiticWeight * intensity_at(s, s.xx, v, m.partner(Process::xx, v));
  });
  const double sy = integrate(lo, hi, [&](double v) {
    return intensity_at(s, s.xy, m.partner(Process::xy, v), v) +
           kParasiticWeight * intensity_at(s, s.yy, m.partner(Process::yy, v), v);
  });
  // Coincidences need the partner S - v inside the y filter as well.
  const double sxy = integrate(std::max(lo, m.partner(Process::xy, hi)), std::min(hi, m.partner(Process::xy, lo)),
                               [&](double v) { return intensity_at(s, s.xy, v, m.partner(Process::xy, v)); });

  const double scale = zeta_xy2 * det.filter_width;
  Counts c;
  c.singles_x = det.dark_counts_x + det.efficiency_x * scale * sx;
  c.singles_y = det.dark_counts_y + det.efficiency_y * scale * sy;
  c.coincidences = det.efficiency_x * det.efficiency_y * scale * sxy;
  return c;
}

double car_from_counts(const Counts& c) {
  const double denom = c.singles_x * c.singles_y;
  if (!(denom > 0.0)) throw PhysicsError("CAR undefined: zero singles");
  return c.coincidences / denom;
}

double car(double zeta2, double r_x, double r_y) {
  if (!(zeta2 > 0.0)) throw std::invalid_argument("car: zeta^2 must be > 0");
  return 1.0 / (zeta2 * (1.0 + kParasiticWeight * r_x) * (1.0 + kParasiticWeight * r_y));
}

std::vector<double> log_space(double min, double max, std::size_t steps) {
  if (!(min > 0.0 && max >= min)) throw std::invalid_argument("zeta2 range: need 0 < min <= max");
  if (steps == 0) throw std::invalid_argument("zeta2 steps: need at least 1");
  if (steps == 1) return {min};
  std::vector<double> out(steps);
  const double a = std::log10(min);
  const double b = std::log10(max);
  for (std::size_t i = 0; i < steps; ++i) out[i] = std::pow(10.0, a + (b - a) * double(i) / double(steps - 1));
  out.front() = min;
  out.back() = max;
  return out;
}

CarCurve car_sweep(const std::vector<double>& zeta2, const PointRatios& ratios, bool grating_enabled) {
  CarCurve curve;
  curve.zeta2 = zeta2;
  curve.r_x = ratios.r_x;
  curve.r_y = ratios.r_y;
  curve.grating_enabled = grating_enabled;
  curve.car.reserve(zeta2.size());
  for (double z : zeta2) curve.car.push_back(car(z, ratios.r_x, ratios.r_y));
  return curve;
}

}  // namespace sfwm
