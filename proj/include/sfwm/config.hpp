#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "sfwm/dispersion.hpp"
#include "sfwm/grating.hpp"
#include "sfwm/jointspectrum.hpp"
#include "sfwm/metrics.hpp"

namespace sfwm {

/// Malformed or invalid configuration; the message starts with the field path.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GridConfig {
  double lambda_min_nm = 1535.0;
  double lambda_max_nm = 1565.0;
  std::size_t points = 1001;
  unsigned threads = 0;
};

struct OutputConfig {
  std::string directory = "out";
  bool log_heatmap = false;
  bool write_pgm = true;
};

struct RunConfig {
  FiberSpec fiber;
  PumpConfig pumps;
  std::optional<double> degenerate_nm;  // phase-matching target; omega_d of the pumps when empty
  bool grating_enabled = true;
  GratingSpec grating;
  DetectionConfig detection;
  GridConfig grid;
  OutputConfig outputs;

  GridOptions grid_options(Backend backend = Backend::closed_form) const;
  std::optional<GratingSpec> grating_spec(bool enabled) const;
  double target_degenerate_nm() const;
};

/// The worked example: 50 mm PM fiber, 1545/1555 nm pumps of 10 ps, moire
/// grating at 1540/1560 nm with dn = 2.1e-3 at half strength per band.
RunConfig default_config();

RunConfig parse_config(const nlohmann::json& doc);
RunConfig load_config(const std::filesystem::path& path);

nlohmann::json to_json(const RunConfig& config);

}  // namespace sfwm
