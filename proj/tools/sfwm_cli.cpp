// Command-line front end: phasematch, grating, jsi, car.

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "sfwm/commands.hpp"
#include "sfwm/output.hpp"

namespace {

int fail(const std::string& kind, const std::string& message) {
  std::cerr << sfwm::dump_summary(sfwm::error_summary(kind, message));
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SFWM photon-pair spectra in birefringent fiber with a Bragg grating"};
  app.require_subcommand(1, 1);

  std::string config_path;
  std::string out_dir;
  app.add_option("--config", config_path, "JSON run configuration (built-in example when omitted)")
      ->check(CLI::ExistingFile);
  app.add_option("--out", out_dir, "Output directory (overrides outputs.directory)");

  auto* phasematch = app.add_subcommand("phasematch", "Solve the pump detuning that phase matches omega_d");
  auto* grating = app.add_subcommand("grating", "Grating design numbers per stop band");

  auto* jsi = app.add_subcommand("jsi", "Joint spectral intensity heatmap");
  std::string process = "all";
  std::string backend = "closed";
  bool no_grating = false;
  bool log_heatmap = false;
  std::size_t points = 0;
  jsi->add_option("--process", process, "xx, yy, xy or all")->check(CLI::IsMember({"xx", "yy", "xy", "all"}));
  jsi->add_flag("--no-grating", no_grating, "Ignore the configured grating");
  jsi->add_option("--backend", backend, "closed or quadrature")->check(CLI::IsMember({"closed", "quadrature"}));
  jsi->add_option("--points", points, "Grid points per axis");
  jsi->add_flag("--log-heatmap", log_heatmap, "log10 PGM mapping");

  auto* car = app.add_subcommand("car", "CAR versus zeta^2 with and without the grating");
  sfwm::CarOptions car_options;
  std::size_t car_points = 0;
  car->add_option("--zeta2-min", car_options.zeta2_min, "Smallest |zeta_xy|^2");
  car->add_option("--zeta2-max", car_options.zeta2_max, "Largest |zeta_xy|^2");
  car->add_option("--zeta2-steps", car_options.zeta2_steps, "Log-spaced samples");
  car->add_option("--points", car_points, "Grid points per axis");

  // Options are accepted before or after the subcommand name.
  for (auto* sub : {phasematch, grating, jsi, car}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    const sfwm::RunConfig config = config_path.empty() ? sfwm::default_config() : sfwm::load_config(config_path);
    const std::optional<std::filesystem::path> out =
        out_dir.empty() ? std::nullopt : std::optional<std::filesystem::path>(out_dir);

    nlohmann::json summary;
    std::string name;
    if (*phasematch) {
      summary = sfwm::cmd_phasematch(config);
      name = "phasematch";
    } else if (*grating) {
      summary = sfwm::cmd_grating(config);
      name = "grating";
    } else if (*jsi) {
      sfwm::JsiOptions o;
      if (process != "all") o.process = sfwm::process_from_string(process);
      o.no_grating = no_grating;
      o.backend = sfwm::backend_from_string(backend);
      if (points) o.points = points;
      if (log_heatmap) o.log_heatmap = true;
      o.out_dir = out;
      summary = sfwm::cmd_jsi(config, o);
    } else {
      if (car_points) car_options.points = car_points;
      car_options.out_dir = out;
      summary = sfwm::cmd_car(config, car_options);
    }
    if (!name.empty() && out) {
      std::filesystem::create_directories(*out);
      sfwm::write_text_file(*out / (name + "_summary.json"), sfwm::dump_summary(summary));
    }
    std::cout << sfwm::dump_summary(summary);
  } catch (const sfwm::ConfigError& e) {
    return fail("config", e.what());
  } catch (const sfwm::PhysicsError& e) {
    return fail("physics", e.what());
  } catch (const std::exception& e) {
    return fail("validation", e.what());
  }
  return 0;
}
