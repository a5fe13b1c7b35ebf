#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "sfwm/config.hpp"

namespace sfwm {

nlohmann::json cmd_phasematch(const RunConfig& config);

nlohmann::json cmd_grating(const RunConfig& config);

struct JsiOptions {
  std::optional<Process> process;  // all three (composite JSI) when empty
  bool no_grating = false;
  Backend backend = Backend::closed_form;
  std::optional<std::size_t> points;
  std::optional<bool> log_heatmap;
  std::optional<std::filesystem::path> out_dir;
};

/// Writes the heatmap CSV (and PGM if enabled) plus jsi_summary.json.
nlohmann::json cmd_jsi(const RunConfig& config, const JsiOptions& options);

struct CarOptions {
  double zeta2_min = 1e-4;
  double zeta2_max = 1.0;
  std::size_t zeta2_steps = 61;
  std::optional<std::size_t> points;
  std::optional<std::filesystem::path> out_dir;
};

/// Writes car.csv plus car_summary.json.
nlohmann::json cmd_car(const RunConfig& config, const CarOptions& options);

/// {"error": {"kind": ..., "message": ...}}
nlohmann::json error_summary(const std::string& kind, const std::string& message);

}  // namespace sfwm
