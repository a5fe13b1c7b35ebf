#include "sfwm/commands.hpp"

#include <cmath>
#include <sstream>

#include "sfwm/output.hpp"

namespace sfwm {

namespace {

using nlohmann::json;

std::filesystem::path prepare_dir(const RunConfig& config, const std::optional<std::filesystem::path>& override) {
  std::filesystem::path dir = override.value_or(std::filesystem::path(config.outputs.directory));
  std::filesystem::create_directories(dir);
  return dir;
}

json ratios_json(const PointRatios& r) {
  return {{"r_x", r.r_x},
          {"r_y", r.r_y},
          {"xy_peak", r.xy_peak},
          {"xx_parasitic", r.xx_parasitic},
          {"yy_parasitic", r.yy_parasitic}};
}

}  // namespace

json error_summary(const std::string& kind, const std::string& message) {
  return {{"error", {{"kind", kind}, {"message", message}}}};
}

json cmd_phasematch(const RunConfig& config) {
  const Fiber fiber(config.fiber);
  const double lambda_d = config.target_degenerate_nm();
  const PhaseMatchSolution s = fiber.solve_pump_detuning(lambda_d);
  const double wd = omega_from_nm(lambda_d);
  const double wx = omega_from_nm(s.lambda_pump_x_nm);
  const double wy = omega_from_nm(s.lambda_pump_y_nm);
  const double partner_x = 2.0 * wx - wd;  // xx process: omega_d and its partner
  const double partner_y = 2.0 * wy - wd;

  const double cx = config.pumps.omega_x();
  const double cy = config.pumps.omega_y();
  const double cd = config.pumps.omega_d();

  json out;
  out["command"] = "phasematch";
  out["degenerate_nm"] = lambda_d;
  out["solution"] = {{"pump_x_nm", s.lambda_pump_x_nm},
                     {"pump_y_nm", s.lambda_pump_y_nm},
                     {"detuning_nm", s.detuning_nm},
                     {"x_pump_is_blue", s.x_pump_is_blue},
                     {"residual_mismatch_rad_per_m", s.residual_mismatch},
                     {"parasitic_partner_x_nm", nm_from_omega(partner_x)},
                     {"parasitic_partner_y_nm", nm_from_omega(partner_y)},
                     {"single_pump_mismatch_x_rad_per_m",
                      fiber.phase_mismatch_single(wx, wd, partner_x, Polarization::x)},
                     {"single_pump_mismatch_y_rad_per_m",
                      fiber.phase_mismatch_single(wy, wd, partner_y, Polarization::y)}};
  out["configured_pumps"] = {{"pump_x_nm", config.pumps.lambda_x_nm},
                             {"pump_y_nm", config.pumps.lambda_y_nm},
                             {"degenerate_nm", nm_from_omega(cd)},
                             {"dual_mismatch_rad_per_m", fiber.phase_mismatch_dual(cx, cy, cd, cd)}};
  out["phase_matching_bandwidth_rad_per_m"] = 2.0 * kPi / fiber.length();
  return out;
}

json cmd_grating(const RunConfig& config) {
  const Fiber fiber(config.fiber);
  const GratingSpec spec = *config.grating_spec(true);
  const Grating grating(fiber, spec);
  const double length = fiber.length();

  json bands = json::array();
  for (const auto& band : grating.bands()) {
    const double period = band.period_nm(Polarization::y);
    bands.push_back({{"center_nm", band.center_nm()},
                     {"kappa_per_m", band.kappa()},
                     {"kappa_L", band.kappa() * length},
                     {"stopband_width_nm", band.stopband_width_nm()},
                     {"period_nm", period},
                     {"period_count", std::llround(length / (period * 1e-9))}});
  }
  json warnings = json::array();
  if (spec.index_contrast == 0.0) warnings.push_back("index_contrast is zero: no stop band opens");

  json out;
  out["command"] = "grating";
  out["length_m"] = length;
  out["index_contrast"] = spec.index_contrast;
  out["coupling_scale"] = spec.coupling_scale;
  out["bands"] = bands;
  out["warnings"] = warnings;
  const double carrier = grating.carrier_period_nm(Polarization::y);
  out["carrier_period_nm"] = carrier;
  out["carrier_period_count"] = std::llround(length / (carrier * 1e-9));
  return out;
}

json cmd_jsi(const RunConfig& config, const JsiOptions& options) {
  const bool grating_on = config.grating_enabled && !options.no_grating;
  const Fiber fiber(config.fiber);
  const SpectrumModel model(fiber, config.pumps, config.grating_spec(grating_on));
  GridOptions grid = config.grid_options(options.backend);
  if (options.points) grid.points = *options.points;
  const bool log_scale = options.log_heatmap.value_or(config.outputs.log_heatmap);

  json processes = json::object();
  JsiGrid image;
  std::string label;
  auto describe = [&](const JointAmplitudeGrid& g) {
    processes[std::string(to_string(g.process))] = {{"normalization", g.normalization},
                                                      {"boundary_fraction", g.boundary_fraction},
                                                      {"boundary_warning", g.boundary_warning},
                                                      {"resolution_warning", g.resolution_warning}};
  };
  if (options.process) {
    const JointAmplitudeGrid g = jsa_grid(model, *options.process, grid);
    describe(g);
    image = intensity(g);
    label = std::string(to_string(*options.process));
  } else {
    const JointAmplitudeGrid xx = jsa_grid(model, Process::xx, grid);
    const JointAmplitudeGrid yy = jsa_grid(model, Process::yy, grid);
    const JointAmplitudeGrid xy = jsa_grid(model, Process::xy, grid);
    for (const auto* g : {&xx, &yy, &xy}) describe(*g);
    image = jsi(xx, yy, xy);
    label = "all";
  }

  const auto dir = prepare_dir(config, options.out_dir);
  const std::string stem = "jsi_" + label + (grating_on ? "_grating" : "_nograting");
  std::ostringstream csv;
  write_heatmap_csv(csv, image);
  write_text_file(dir / (stem + ".csv"), csv.str());
  json files = json::array({stem + ".csv"});
  if (config.outputs.write_pgm) {
    std::ostringstream pgm;
    write_pgm(pgm, render_heatmap(image, log_scale));
    write_text_file(dir / (stem + ".pgm"), pgm.str());
    files.push_back(stem + ".pgm");
  }

  double peak = 0.0;
  for (double v : image.values) peak = std::max(peak, v);
  json out;
  out["command"] = "jsi";
  out["process"] = label;
  out["grating_enabled"] = grating_on;
  out["backend"] = std::string(to_string(options.backend));
  out["points"] = grid.points;
  out["window_nm"] = {grid.lambda_min_nm, grid.lambda_max_nm};
  out["processes"] = processes;
  out["jsi_norm"] = jsi_norm(image);
  out["peak"] = peak;
  out["heatmap_scale"] = log_scale ? "log10" : "linear";
  out["log_floor_relative_to_peak"] = kLogHeatmapFloor;
  out["files"] = files;
  write_text_file(dir / (stem + "_summary.json"), dump_summary(out));
  return out;
}

json cmd_car(const RunConfig& config, const CarOptions& options) {
  if (!(options.zeta2_min > 0.0) || !(options.zeta2_max >= options.zeta2_min))
    throw std::invalid_argument("zeta2: need 0 < min <= max");
  if (options.zeta2_steps < 1) throw std::invalid_argument("zeta2-steps: need at least 1");
  const Fiber fiber(config.fiber);
  GridOptions grid = config.grid_options();
  if (options.points) grid.points = *options.points;

  const SpectrumSet bare = compute_spectra(SpectrumModel(fiber, config.pumps, std::nullopt), grid);
  const SpectrumSet notched = compute_spectra(SpectrumModel(fiber, config.pumps, config.grating_spec(true)), grid);
  const PointRatios r0 = point_ratios(bare, config.detection.filter_center);
  const PointRatios r1 = point_ratios(notched, config.detection.filter_center);

  const auto zeta2 = log_space(options.zeta2_min, options.zeta2_max, options.zeta2_steps);
  const CarCurve without = car_sweep(zeta2, r0, false);
  const CarCurve with = car_sweep(zeta2, r1, true);

  const auto dir = prepare_dir(config, options.out_dir);
  std::ostringstream csv;
  write_car_csv(csv, without, with);
  write_text_file(dir / "car.csv", csv.str());

  const double penalty0 = (1.0 + 2.25 * r0.r_x) * (1.0 + 2.25 * r0.r_y);
  const double penalty1 = (1.0 + 2.25 * r1.r_x) * (1.0 + 2.25 * r1.r_y);
  json out;
  out["command"] = "car";
  out["no_grating"] = ratios_json(r0);
  out["with_grating"] = ratios_json(r1);
  out["suppression_db_x"] = 10.0 * std::log10(r0.r_x / r1.r_x);
  out["suppression_db_y"] = 10.0 * std::log10(r0.r_y / r1.r_y);
  out["car_improvement_factor"] = penalty0 / penalty1;
  out["ideal_improvement_factor"] = penalty0;
  out["with_grating_fraction_of_ideal"] = 1.0 / penalty1;
  out["xy_peak_change"] = r1.xy_peak / r0.xy_peak - 1.0;
  out["zeta2"] = {{"min", options.zeta2_min}, {"max", options.zeta2_max}, {"steps", options.zeta2_steps}};
  out["points"] = grid.points;
  out["files"] = json::array({"car.csv"});
  write_text_file(dir / "car_summary.json", dump_summary(out));
  return out;
}

}  // namespace sfwm
