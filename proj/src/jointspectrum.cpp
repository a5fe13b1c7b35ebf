#include "sfwm/jointspectrum.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>

#include "sfwm/quadrature.hpp"

namespace sfwm {

namespace {

constexpr std::size_t kNodesPerPanel = 16;
constexpr std::size_t kMinPanels = 32;

const GaussLegendreRule& panel_rule() {
  static const GaussLegendreRule rule = gauss_legendre(kNodesPerPanel);
  return rule;
}

double pairwise_sum(std::span<const double> v) {
  if (v.size() <= 8) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  }
  const std::size_t half = v.size() / 2;
  return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

template <class RowFn>
void for_each_row(std::size_t rows, unsigned threads, RowFn&& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, rows));
  if (threads <= 1) {
    for (std::size_t i = 0; i < rows; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < rows; i = next++) fn(i);
    });
  }
}

}  // namespace

std::string_view to_string(Process process) {
  switch (process) {
    case Process::xx:
      return "xx";
    case Process::yy:
      return "yy";
    case Process::xy:
      return "xy";
  }
  return "?";
}

Process process_from_string(std::string_view name) {
  if (name == "xx") return Process::xx;
  if (name == "yy") return Process::yy;
  if (name == "xy") return Process::xy;
  throw std::invalid_argument("unknown process '" + std::string(name) + "'");
}

std::string_view to_string(Backend backend) {
  return backend == Backend::closed_form ? "closed" : "quadrature";
}

Backend backend_from_string(std::string_view name) {
  if (name == "closed") return Backend::closed_form;
  if (name == "quadrature") return Backend::quadrature;
  throw std::invalid_argument("unknown backend '" + std::string(name) + "'");
}

void PumpConfig::validate() const {
  if (!(lambda_x_nm > 0.0)) throw std::invalid_argument("pumps.lambda_x_nm: must be > 0");
  if (!(lambda_y_nm > 0.0)) throw std::invalid_argument("pumps.lambda_y_nm: must be > 0");
  if (lambda_x_nm == lambda_y_nm) throw std::invalid_argument("pumps: lambda_x_nm and lambda_y_nm must differ");
  if (!(duration_fwhm_s > 0.0)) throw std::invalid_argument("pumps.duration_fwhm_s: must be > 0");
}

double pump_amplitude(double detuning, double duration_fwhm_s) {
  const double x = detuning * duration_fwhm_s;
  return std::exp(-x * x / (8.0 * std::numbers::ln2));
}

SpectrumModel::SpectrumModel(const Fiber& fiber, const PumpConfig& pumps, const std::optional<GratingSpec>& grating)
    : fiber_(fiber), pumps_(pumps) {
  pumps_.validate();
  if (grating) {
    GratingSpec spec = *grating;
    spec.length_m = fiber_.length();
    grating_.emplace(fiber_, std::move(spec));
  }
  const double wx = pumps_.omega_x();
  const double wy = pumps_.omega_y();
  k_in_xx_ = 2.0 * fiber_.wavevector(wx, Polarization::x);
  k_in_yy_ = 2.0 * fiber_.wavevector(wy, Polarization::y);
  k_in_xy_ = fiber_.wavevector(wx, Polarization::x) + fiber_.wavevector(wy, Polarization::y);
}

ProcessGeometry SpectrumModel::geometry(Process process) const {
  const double wx = pumps_.omega_x();
  const double wy = pumps_.omega_y();
  switch (process) {
    case Process::xx:
      return {Polarization::x, Polarization::x, wx, wx};
    case Process::yy:
      return {Polarization::y, Polarization::y, wy, wy};
    case Process::xy:
      return {Polarization::x, Polarization::y, wx, wy};
  }
  throw std::logic_error("bad process");
}

double SpectrumModel::partner(Process process, double omega_1) const {
  const ProcessGeometry g = geometry(process);
  return (g.pump_1 + g.pump_2) - omega_1;
}

double SpectrumModel::input_wavevector(Process process) const {
  switch (process) {
    case Process::xx:
      return k_in_xx_;
    case Process::yy:
      return k_in_yy_;
    case Process::xy:
      return k_in_xy_;
  }
  throw std::logic_error("bad process");
}

double SpectrumModel::phase_mismatch(Process process, double omega_1, double omega_2) const {
  const ProcessGeometry g = geometry(process);
  return input_wavevector(process) - (fiber_.wavevector(omega_1, g.out_1) + fiber_.wavevector(omega_2, g.out_2));
}

Complex SpectrumModel::envelope(double omega, Polarization pol, double z) const {
  return grating_ ? grating_->envelope(omega, pol, z) : Complex{1.0, 0.0};
}

ExpSeries SpectrumModel::envelope_terms(double omega, Polarization pol) const {
  return grating_ ? grating_->envelope_terms(omega, pol) : ExpSeries{ExpTerm{}};
}

Complex SpectrumModel::j_closed_form(Process process, double omega_1, double omega_2) const {
  const ProcessGeometry g = geometry(process);
  if (g.out_1 == g.out_2 && omega_1 > omega_2) std::swap(omega_1, omega_2);
  const double dk = phase_mismatch(process, omega_1, omega_2);
  const ExpSeries a = conjugate(envelope_terms(omega_1, g.out_1));
  const ExpSeries b = conjugate(envelope_terms(omega_2, g.out_2));
  return integrate_product(a, b, Complex{0.0, dk}, length());
}

std::size_t SpectrumModel::default_panels(Process process, double omega_1, double omega_2) const {
  const ProcessGeometry g = geometry(process);
  // Fastest phase of the integrand; with two bands the per-band maximum is
  // used, leaving each panel well under one period of any component.
  double band_rate = 0.0;
  if (grating_) {
    for (const auto& band : grating_->bands()) {
      band_rate = std::max(band_rate, std::abs(band.detuning(omega_1, g.out_1)) +
                                          std::abs(band.detuning(omega_2, g.out_2)) + 2.0 * band.kappa());
    }
  }
  const double rate = std::abs(phase_mismatch(process, omega_1, omega_2)) + band_rate;
  const double panels = std::ceil(rate * length() / kPi);
  return std::max<std::size_t>(kMinPanels, static_cast<std::size_t>(panels));
}

Complex SpectrumModel::j_quadrature(Process process, double omega_1, double omega_2, std::size_t panels) const {
  const ProcessGeometry g = geometry(process);
  // Same-polarization processes are symmetric; a fixed argument order makes that exact.
  if (g.out_1 == g.out_2 && omega_1 > omega_2) std::swap(omega_1, omega_2);
  const double dk = phase_mismatch(process, omega_1, omega_2);
  if (panels == 0) panels = default_panels(process, omega_1, omega_2);

  // Detunings are fixed per photon; only the direct hyperbolic form runs per node.
  std::vector<GratingProfile> profiles;
  if (grating_) {
    for (const auto& b : grating_->bands()) {
      profiles.emplace_back(b.detuning(omega_1, g.out_1), b.kappa(), length());
      profiles.emplace_back(b.detuning(omega_2, g.out_2), b.kappa(), length());
    }
  }
  Complex sum{0.0, 0.0};
  for_each_composite_node(panel_rule(), 0.0, length(), panels, [&](double z, double w) {
    Complex f = std::exp(kI * (dk * z));
    for (const auto& p : profiles) f *= std::conj(p.envelope(z));
    sum += w * f;
  });
  return sum;
}

Complex SpectrumModel::j(Process process, double omega_1, double omega_2, Backend backend) const {
  return backend == Backend::closed_form ? j_closed_form(process, omega_1, omega_2)
                                         : j_quadrature(process, omega_1, omega_2);
}

Complex SpectrumModel::amplitude(Process process, double omega_1, double omega_2, Backend backend) const {
  const ProcessGeometry g = geometry(process);
  const double alpha = pump_amplitude((omega_1 + omega_2) - (g.pump_1 + g.pump_2), pumps_.duration_fwhm_s);
  if (alpha == 0.0) return {0.0, 0.0};
  return alpha * j(process, omega_1, omega_2, backend);
}

std::vector<double> frequency_axis(double lambda_min_nm, double lambda_max_nm, std::size_t points) {
  if (!(lambda_min_nm > 0.0 && lambda_max_nm > lambda_min_nm))
    throw std::invalid_argument("grid.window_nm: need 0 < min < max");
  if (points < 2) throw std::invalid_argument("grid.points: need at least 2");
  const double lo = omega_from_nm(lambda_max_nm);
  const double hi = omega_from_nm(lambda_min_nm);
  std::vector<double> axis(points);
  const double step = (hi - lo) / double(points - 1);
  for (std::size_t i = 0; i < points; ++i) axis[i] = lo + step * double(i);
  axis.back() = hi;
  return axis;
}

double JointAmplitudeGrid::cell_area() const {
  const double d1 = (axis_1.back() - axis_1.front()) / double(axis_1.size() - 1);
  const double d2 = (axis_2.back() - axis_2.front()) / double(axis_2.size() - 1);
  return d1 * d2;
}

namespace {

std::vector<double> row_intensity_sums(const JointAmplitudeGrid& grid) {
  std::vector<double> rows(grid.rows());
  for (std::size_t i = 0; i < grid.rows(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < grid.cols(); ++j) s += std::norm(grid.at(i, j));
    rows[i] = s;
  }
  return rows;
}

}  // namespace

double grid_norm(const JointAmplitudeGrid& grid) {
  const std::vector<double> rows = row_intensity_sums(grid);
  return pairwise_sum(rows) * grid.cell_area();
}

void normalize(JointAmplitudeGrid& grid) {
  const double n = grid_norm(grid);
  if (!(n > 0.0)) throw PhysicsError("cannot normalize a grid with zero norm");
  const double scale = 1.0 / std::sqrt(n);
  for (auto& v : grid.values) v *= scale;
  grid.normalization *= n;
  grid.normalized = true;
}

JointAmplitudeGrid jsa_grid(const SpectrumModel& model, Process process, const GridOptions& options) {
  if (options.points < 64) throw std::invalid_argument("grid.points: need at least 64");
  JointAmplitudeGrid grid;
  grid.process = process;
  grid.axis_1 = frequency_axis(options.lambda_min_nm, options.lambda_max_nm, options.points);
  grid.axis_2 = grid.axis_1;
  const std::size_t n = options.points;
  grid.values.assign(n * n, Complex{0.0, 0.0});

  const ProcessGeometry g = model.geometry(process);
  const double pump_sum = g.pump_1 + g.pump_2;
  const double duration = model.pumps().duration_fwhm_s;

  if (options.backend == Backend::closed_form) {
    // Per-axis precomputation; the arithmetic matches SpectrumModel::amplitude.
    std::vector<ExpSeries> env_1(n), env_2(n);
    for (std::size_t i = 0; i < n; ++i) {
      env_1[i] = conjugate(model.envelope_terms(grid.axis_1[i], g.out_1));
      env_2[i] = conjugate(model.envelope_terms(grid.axis_2[i], g.out_2));
    }
    for_each_row(n, options.threads, [&](std::size_t i) {
      const double w1 = grid.axis_1[i];
      for (std::size_t j = 0; j < n; ++j) {
        const double w2 = grid.axis_2[j];
        const double alpha = pump_amplitude((w1 + w2) - pump_sum, duration);
        if (alpha == 0.0) continue;
        const double dk = model.phase_mismatch(process, w1, w2);
        const bool swap = g.out_1 == g.out_2 && w1 > w2;
        const ExpSeries& a = swap ? env_1[j] : env_1[i];
        const ExpSeries& b = swap ? env_2[i] : env_2[j];
        grid.values[i * n + j] = alpha * integrate_product(a, b, Complex{0.0, dk}, model.length());
      }
    });
  } else {
    for_each_row(n, options.threads, [&](std::size_t i) {
      for (std::size_t j = 0; j < n; ++j) {
        grid.values[i * n + j] = model.amplitude(process, grid.axis_1[i], grid.axis_2[j], Backend::quadrature);
      }
    });
  }

  std::vector<double> rows = row_intensity_sums(grid);
  const double total = pairwise_sum(rows);
  double border = rows.front() + rows.back();
  for (std::size_t i = 1; i + 1 < n; ++i) border += std::norm(grid.at(i, 0)) + std::norm(grid.at(i, n - 1));
  grid.boundary_fraction = total > 0.0 ? border / total : 0.0;
  grid.boundary_warning = grid.boundary_fraction > kBoundaryMassThreshold;
  const double mid = grid.axis_1[n / 2];
  const double k1 = std::max(model.fiber().inverse_group_velocity(mid, g.out_1),
                             model.fiber().inverse_group_velocity(mid, g.out_2));
  grid.resolution_limit = 2.0 * kPi / (k1 * model.length());
  grid.resolution_warning = grid.axis_1[1] - grid.axis_1[0] > grid.resolution_limit;
  normalize(grid);
  return grid;
}

Complex normalized_amplitude(const SpectrumModel& model, const JointAmplitudeGrid& grid, double omega_1,
                             double omega_2, Backend backend) {
  return model.amplitude(grid.process, omega_1, omega_2, backend) / std::sqrt(grid.normalization);
}

JsiGrid jsi(const JointAmplitudeGrid& xx, const JointAmplitudeGrid& yy, const JointAmplitudeGrid& xy) {
  if (xx.process != Process::xx || yy.process != Process::yy || xy.process != Process::xy)
    throw std::invalid_argument("jsi: grids must be xx, yy, xy in that order");
  if (xx.axis_1 != yy.axis_1 || xx.axis_1 != xy.axis_1 || xx.axis_2 != yy.axis_2 || xx.axis_2 != xy.axis_2)
    throw std::invalid_argument("jsi: grids do not share axes");
  if (!xx.normalized || !yy.normalized || !xy.normalized) throw std::invalid_argument("jsi: grids must be normalized");
  JsiGrid out;
  out.axis_1 = xx.axis_1;
  out.axis_2 = xx.axis_2;
  out.values.resize(xx.values.size());
  for (std::size_t k = 0; k < out.values.size(); ++k) {
    out.values[k] = (9.0 * std::norm(xx.values[k]) + 9.0 * std::norm(yy.values[k]) + 8.0 * std::norm(xy.values[k])) / 26.0;
  }
  return out;
}

JsiGrid intensity(const JointAmplitudeGrid& grid) {
  JsiGrid out;
  out.axis_1 = grid.axis_1;
  out.axis_2 = grid.axis_2;
  out.values.resize(grid.values.size());
  for (std::size_t k = 0; k < out.values.size(); ++k) out.values[k] = std::norm(grid.values[k]);
  return out;
}

double jsi_norm(const JsiGrid& grid) {
  std::vector<double> rows(grid.rows());
  for (std::size_t i = 0; i < grid.rows(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < grid.cols(); ++j) s += grid.at(i, j);
    rows[i] = s;
  }
  const double d1 = (grid.axis_1.back() - grid.axis_1.front()) / double(grid.rows() - 1);
  const double d2 = (grid.axis_2.back() - grid.axis_2.front()) / double(grid.cols() - 1);
  return pairwise_sum(rows) * d1 * d2;
}

double pair_rate(double zeta_xy2) {
  if (!(zeta_xy2 >= 0.0)) throw std::invalid_argument("pair_rate: zeta_xy^2 must be >= 0");
  return 13.0 / 4.0 * zeta_xy2;
}

}  // namespace sfwm
