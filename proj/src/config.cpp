#include "sfwm/config.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace sfwm {

namespace {

using nlohmann::json;

void reject_unknown(const json& obj, const std::string& path, std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) throw ConfigError(path + ": expected an object");
  const std::set<std::string> keys(allowed.begin(), allowed.end());
  for (const auto& [key, _] : obj.items()) {
    if (!keys.contains(key)) throw ConfigError((path.empty() ? key : path + "." + key) + ": unknown key");
  }
}

double get_number(const json& obj, const std::string& path, const char* key, double fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number()) throw ConfigError(path + "." + key + ": expected a number");
  return v.get<double>();
}

bool get_bool(const json& obj, const std::string& path, const char* key, bool fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_boolean()) throw ConfigError(path + "." + key + ": expected true or false");
  return v.get<bool>();
}

std::string get_string(const json& obj, const std::string& path, const char* key, const std::string& fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_string()) throw ConfigError(path + "." + key + ": expected a string");
  return v.get<std::string>();
}

std::size_t get_count(const json& obj, const std::string& path, const char* key, std::size_t fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 0)
    throw ConfigError(path + "." + key + ": expected a non-negative integer");
  return v.get<std::size_t>();
}

std::vector<double> get_numbers(const json& obj, const std::string& path, const char* key,
                                const std::vector<double>& fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_array()) throw ConfigError(path + "." + key + ": expected an array of numbers");
  std::vector<double> out;
  for (const auto& e : v) {
    if (!e.is_number()) throw ConfigError(path + "." + key + ": expected an array of numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

std::pair<double, double> get_range(const json& obj, const std::string& path, const char* key,
                                    std::pair<double, double> fallback) {
  const auto v = get_numbers(obj, path, key, {fallback.first, fallback.second});
  if (v.size() != 2) throw ConfigError(path + "." + key + ": expected [min, max]");
  return {v[0], v[1]};
}

template <class Fn>
void rethrow_as_config(Fn&& fn) {
  try {
    fn();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
}

}  // namespace

GridOptions RunConfig::grid_options(Backend backend) const {
  GridOptions o;
  o.lambda_min_nm = grid.lambda_min_nm;
  o.lambda_max_nm = grid.lambda_max_nm;
  o.points = grid.points;
  o.backend = backend;
  o.threads = grid.threads;
  return o;
}

std::optional<GratingSpec> RunConfig::grating_spec(bool enabled) const {
  if (!enabled) return std::nullopt;
  GratingSpec g = grating;
  g.length_m = fiber.length_m;
  return g;
}

double RunConfig::target_degenerate_nm() const {
  return degenerate_nm.value_or(nm_from_omega(pumps.omega_d()));
}

RunConfig default_config() {
  RunConfig c;
  c.degenerate_nm = 1550.0;
  c.detection.filter_width = 7.8e10;
  return c;
}

RunConfig parse_config(const json& doc) {
  reject_unknown(doc, "", {"fiber", "pumps", "grating", "detection", "grid", "outputs"});
  RunConfig c = default_config();
  const json empty = json::object();
  auto section = [&](const char* key) -> const json& { return doc.contains(key) ? doc.at(key) : empty; };

  const json& fiber = section("fiber");
  reject_unknown(fiber, "fiber", {"length_m", "material", "birefringence", "validity_window_nm"});
  c.fiber.length_m = get_number(fiber, "fiber", "length_m", c.fiber.length_m);
  rethrow_as_config([&] {
    try {
      c.fiber.material = material_from_string(get_string(fiber, "fiber", "material", "fused-silica-malitson"));
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument(std::string("fiber.material: ") + e.what());
    }
  });
  c.fiber.birefringence = get_number(fiber, "fiber", "birefringence", c.fiber.birefringence);
  std::tie(c.fiber.window_min_nm, c.fiber.window_max_nm) =
      get_range(fiber, "fiber", "validity_window_nm", {c.fiber.window_min_nm, c.fiber.window_max_nm});

  const json& pumps = section("pumps");
  reject_unknown(pumps, "pumps", {"lambda_x_nm", "lambda_y_nm", "duration_fwhm_s", "degenerate_nm"});
  c.pumps.lambda_x_nm = get_number(pumps, "pumps", "lambda_x_nm", c.pumps.lambda_x_nm);
  c.pumps.lambda_y_nm = get_number(pumps, "pumps", "lambda_y_nm", c.pumps.lambda_y_nm);
  c.pumps.duration_fwhm_s = get_number(pumps, "pumps", "duration_fwhm_s", c.pumps.duration_fwhm_s);
  if (pumps.contains("degenerate_nm")) {
    c.degenerate_nm = get_number(pumps, "pumps", "degenerate_nm", 0.0);
  } else if (doc.contains("pumps")) {
    c.degenerate_nm.reset();
  }

  const json& grating = section("grating");
  reject_unknown(grating, "grating", {"enabled", "stop_band_centers_nm", "index_contrast", "coupling_scale"});
  c.grating_enabled = get_bool(grating, "grating", "enabled", c.grating_enabled);
  c.grating.centers_nm = get_numbers(grating, "grating", "stop_band_centers_nm", c.grating.centers_nm);
  c.grating.index_contrast = get_number(grating, "grating", "index_contrast", c.grating.index_contrast);
  c.grating.coupling_scale = get_number(grating, "grating", "coupling_scale", c.grating.coupling_scale);
  c.grating.length_m = c.fiber.length_m;

  const json& det = section("detection");
  reject_unknown(det, "detection",
                 {"efficiency_x", "efficiency_y", "dark_counts_x", "dark_counts_y", "filter_center_nm",
                  "filter_width_rad_s"});
  c.detection.efficiency_x = get_number(det, "detection", "efficiency_x", c.detection.efficiency_x);
  c.detection.efficiency_y = get_number(det, "detection", "efficiency_y", c.detection.efficiency_y);
  c.detection.dark_counts_x = get_number(det, "detection", "dark_counts_x", c.detection.dark_counts_x);
  c.detection.dark_counts_y = get_number(det, "detection", "dark_counts_y", c.detection.dark_counts_y);
  c.detection.filter_width = get_number(det, "detection", "filter_width_rad_s", c.detection.filter_width);
  if (det.contains("filter_center_nm")) {
    const double nm = get_number(det, "detection", "filter_center_nm", 0.0);
    if (!(nm > 0.0)) throw ConfigError("detection.filter_center_nm: must be > 0");
    c.detection.filter_center = omega_from_nm(nm);
  }

  const json& grid = section("grid");
  reject_unknown(grid, "grid", {"window_nm", "points", "threads"});
  std::tie(c.grid.lambda_min_nm, c.grid.lambda_max_nm) =
      get_range(grid, "grid", "window_nm", {c.grid.lambda_min_nm, c.grid.lambda_max_nm});
  c.grid.points = get_count(grid, "grid", "points", c.grid.points);
  c.grid.threads = static_cast<unsigned>(get_count(grid, "grid", "threads", c.grid.threads));

  const json& out = section("outputs");
  reject_unknown(out, "outputs", {"directory", "log_heatmap", "write_pgm"});
  c.outputs.directory = get_string(out, "outputs", "directory", c.outputs.directory);
  c.outputs.log_heatmap = get_bool(out, "outputs", "log_heatmap", c.outputs.log_heatmap);
  c.outputs.write_pgm = get_bool(out, "outputs", "write_pgm", c.outputs.write_pgm);

  // Physical invariants of the nested types.
  rethrow_as_config([&] {
    c.fiber.validate();
    c.pumps.validate();
    c.grating.validate();
    c.detection.validate();
  });
  if (!(c.grid.lambda_min_nm < c.grid.lambda_max_nm))
    throw ConfigError("grid.window_nm: need min < max");
  if (c.grid.lambda_min_nm < c.fiber.window_min_nm || c.grid.lambda_max_nm > c.fiber.window_max_nm)
    throw ConfigError("grid.window_nm: must lie inside fiber.validity_window_nm");
  if (c.grid.points < 64) throw ConfigError("grid.points: need at least 64");
  if (c.degenerate_nm && !(*c.degenerate_nm > 0.0)) throw ConfigError("pumps.degenerate_nm: must be > 0");
  for (double lambda : {c.pumps.lambda_x_nm, c.pumps.lambda_y_nm}) {
    if (lambda < c.fiber.window_min_nm || lambda > c.fiber.window_max_nm)
      throw ConfigError("pumps: wavelength " + std::to_string(lambda) + " nm outside fiber.validity_window_nm");
  }
  if (c.grating_enabled) {
    rethrow_as_config([&] {
      const Fiber fiber(c.fiber);
      const Grating g(fiber, *c.grating_spec(true));
      double narrowest = std::numeric_limits<double>::infinity();
      for (const auto& band : g.bands()) narrowest = std::min(narrowest, band.stopband_width_nm());
      if (c.grating.index_contrast > 0.0) {
        c.detection.validate_against_stopband(narrowest, nm_from_omega(c.pumps.omega_d()));
      }
    });
  }
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  json doc;
  try {
    doc = json::parse(buffer.str());
  } catch (const json::parse_error& e) {
    throw ConfigError("parse error in '" + path.string() + "': " + e.what());
  }
  return parse_config(doc);
}

json to_json(const RunConfig& c) {
  json doc;
  doc["fiber"] = {{"length_m", c.fiber.length_m},
                  {"material", std::string(to_string(c.fiber.material))},
                  {"birefringence", c.fiber.birefringence},
                  {"validity_window_nm", {c.fiber.window_min_nm, c.fiber.window_max_nm}}};
  doc["pumps"] = {{"lambda_x_nm", c.pumps.lambda_x_nm},
                  {"lambda_y_nm", c.pumps.lambda_y_nm},
                  {"duration_fwhm_s", c.pumps.duration_fwhm_s}};
  if (c.degenerate_nm) doc["pumps"]["degenerate_nm"] = *c.degenerate_nm;
  doc["grating"] = {{"enabled", c.grating_enabled},
                    {"stop_band_centers_nm", c.grating.centers_nm},
                    {"index_contrast", c.grating.index_contrast},
                    {"coupling_scale", c.grating.coupling_scale}};
  doc["detection"] = {{"efficiency_x", c.detection.efficiency_x},
                      {"efficiency_y", c.detection.efficiency_y},
                      {"dark_counts_x", c.detection.dark_counts_x},
                      {"dark_counts_y", c.detection.dark_counts_y},
                      {"filter_width_rad_s", c.detection.filter_width}};
  if (c.detection.filter_center) doc["detection"]["filter_center_nm"] = nm_from_omega(*c.detection.filter_center);
  doc["grid"] = {{"window_nm", {c.grid.lambda_min_nm, c.grid.lambda_max_nm}},
                 {"points", c.grid.points},
                 {"threads", c.grid.threads}};
  doc["outputs"] = {{"directory", c.outputs.directory},
                    {"log_heatmap", c.outputs.log_heatmap},
                    {"write_pgm", c.outputs.write_pgm}};
  return doc;
}

}  // namespace sfwm
