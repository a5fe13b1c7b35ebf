#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "sfwm/commands.hpp"
#include "sfwm/output.hpp"

using namespace sfwm;
namespace fs = std::filesystem;

namespace {

const fs::path kSource = SFWM_SOURCE_DIR;

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("sfwm_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

int run_cli(const std::string& args, const fs::path& log) {
  const std::string cmd = std::string("\"") + SFWM_CLI_PATH + "\" " + args + " > \"" + log.string() + "\" 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string config_error(const nlohmann::json& doc) {
  try {
    parse_config(doc);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

JsiGrid toy_grid() {
  JsiGrid g;
  g.axis_1 = frequency_axis(1549.0, 1551.0, 5);
  g.axis_2 = frequency_axis(1548.0, 1552.0, 7);
  for (std::size_t i = 0; i < 35; ++i) g.values.push_back(std::pow(10.0, -double(i) / 3.0) * (1.0 + 1.0 / 3.0));
  return g;
}

}  // namespace

TEST_CASE("shipped config is the worked example") {
  const RunConfig c = load_config(kSource / "configs" / "default.json");
  CHECK(c.fiber.length_m == 0.05);
  CHECK(c.fiber.birefringence == 3.3e-5);
  CHECK(c.pumps.lambda_x_nm == 1545.0);
  CHECK(c.pumps.lambda_y_nm == 1555.0);
  CHECK(c.pumps.duration_fwhm_s == 10e-12);
  CHECK(c.grating_enabled);
  CHECK(c.grating.index_contrast == 2.1e-3);
  CHECK(c.grating.coupling_scale == 0.5);
  CHECK(c.grating.centers_nm == std::vector<double>{1540.0, 1560.0});
  CHECK(c.grid.points == 1001);
  CHECK(to_json(c) == to_json(default_config()));
}

TEST_CASE("config errors") {
  const fs::path dir = scratch("config");
  write(dir / "empty.json", "");
  CHECK_THROWS_WITH_AS(load_config(dir / "empty.json"), doctest::Contains("parse error"), ConfigError);
  CHECK_THROWS_AS(load_config(dir / "missing.json"), ConfigError);

  CHECK(config_error({{"fiber", {{"length_m", -0.05}}}}).rfind("fiber.length_m", 0) == 0);
  CHECK(config_error({{"fiber", {{"lenght_m", 0.05}}}}).find("fiber.lenght_m: unknown key") != std::string::npos);
  CHECK(config_error({{"extra", 1}}).find("extra: unknown key") != std::string::npos);
  CHECK(config_error({{"fiber", {{"material", "sapphire"}}}}).rfind("fiber.material", 0) == 0);
  CHECK(config_error({{"pumps", {{"lambda_x_nm", "1545"}}}}).rfind("pumps.lambda_x_nm", 0) == 0);
  CHECK(config_error({{"pumps", {{"duration_fwhm_s", 0.0}}}}).rfind("pumps.duration_fwhm_s", 0) == 0);
  CHECK(config_error({{"grating", {{"coupling_scale", 1.5}}}}).rfind("grating.coupling_scale", 0) == 0);
  CHECK(config_error({{"grid", {{"points", 10}}}}).rfind("grid.points", 0) == 0);
  CHECK(config_error({{"grid", {{"window_nm", {1100, 1565}}}}}).rfind("grid.window_nm", 0) == 0);
  CHECK(config_error({{"detection", {{"filter_width_rad_s", 2e12}}}}).rfind("detection.filter_width_rad_s", 0) == 0);
  // The stop-band bound only applies with the grating on.
  CHECK(config_error({{"detection", {{"filter_width_rad_s", 2e12}}}, {"grating", {{"enabled", false}}}}).empty());
  CHECK(config_error(nlohmann::json::object()).empty());
}

TEST_CASE("heatmap CSV round-trips") {
  const JsiGrid g = toy_grid();
  std::ostringstream out;
  write_heatmap_csv(out, g);
  const std::string text = out.str();
  CHECK(text.find('\r') == std::string::npos);
  CHECK(text.rfind("lambda_nm,", 0) == 0);
  std::istringstream in(text);
  const HeatmapTable t = read_heatmap_csv(in);
  REQUIRE(t.axis_1_nm.size() == 5);
  REQUIRE(t.axis_2_nm.size() == 7);
  CHECK(t.values == g.values);
  for (std::size_t i = 0; i < 5; ++i) CHECK(std::abs(t.axis_1_nm[i] - nm_from_omega(g.axis_1[i])) < 1e-5);
  CHECK(t.axis_2_nm.front() == doctest::Approx(1552.0).epsilon(1e-9));
}

TEST_CASE("PGM renders") {
  const JsiGrid g = toy_grid();
  for (bool log_scale : {false, true}) {
    const PgmImage img = render_heatmap(g, log_scale);
    CHECK(img.width == 7);
    CHECK(img.height == 5);
    CHECK(img.pixels[0] == 255);
    std::stringstream io;
    write_pgm(io, img);
    CHECK(io.str().rfind("P5\n7 5\n255\n", 0) == 0);
    const PgmImage back = read_pgm(io);
    CHECK(back.pixels == img.pixels);
  }
  // 1e-6 of the peak is mid-grey on the log scale and black on the linear one.
  const PgmImage lin = render_heatmap(g, false);
  const PgmImage log = render_heatmap(g, true);
  CHECK(lin.pixels[18] == 0);
  CHECK(log.pixels[18] == 128);
  CHECK(log.pixels[34] == 14);
}

TEST_CASE("CAR CSV") {
  PointRatios r;
  r.r_x = 1.0;
  r.r_y = 1.0;
  const auto z = log_space(0.5, 0.5, 1);
  std::ostringstream out;
  write_car_csv(out, car_sweep(z, r, false), car_sweep(z, PointRatios{}, true));
  CHECK(out.str() == "zeta2,car_no_grating,car_with_grating,ideal_max\n0.5,0.1893491124260355,2,2\n");
}

TEST_CASE("summary JSON has sorted keys") {
  nlohmann::json j;
  j["zeta"] = 1;
  j["alpha"] = {{"b", 2}, {"a", 1}};
  CHECK(dump_summary(j) == "{\n  \"alpha\": {\n    \"a\": 1,\n    \"b\": 2\n  },\n  \"zeta\": 1\n}\n");
}

TEST_CASE("grating command") {
  const nlohmann::json s = cmd_grating(default_config());
  REQUIRE(s["bands"].size() == 2);
  for (const auto& b : s["bands"]) {
    CHECK(b["kappa_L"].get<double>() > 134.0);
    CHECK(b["kappa_L"].get<double>() < 139.0);
    CHECK(std::abs(b["stopband_width_nm"].get<double>() - 1.4) < 0.1);
    CHECK(std::abs(b["period_nm"].get<double>() - 536.0) < 5.0);
    CHECK(b["period_count"].get<long long>() > 92000);
    CHECK(b["period_count"].get<long long>() < 95000);
  }
  CHECK(s["carrier_period_count"].get<long long>() == 93167);
  CHECK(s["warnings"].empty());

  RunConfig flat = default_config();
  flat.grating.index_contrast = 0.0;
  const nlohmann::json z = cmd_grating(flat);
  for (const auto& b : z["bands"]) {
    CHECK(b["kappa_L"].get<double>() == 0.0);
    CHECK(b["stopband_width_nm"].get<double>() == 0.0);
  }
  CHECK(z["warnings"].size() == 1);

  RunConfig full = default_config();
  full.grating.coupling_scale = 1.0;
  CHECK(cmd_grating(full)["bands"][0]["kappa_L"].get<double>() == 2.0 * s["bands"][0]["kappa_L"].get<double>());
}

TEST_CASE("phasematch command") {
  const nlohmann::json s = cmd_phasematch(default_config());
  const auto& sol = s["solution"];
  CHECK(std::abs(sol["pump_x_nm"].get<double>() - 1545.0) < 0.3);
  CHECK(std::abs(sol["pump_y_nm"].get<double>() - 1555.0) < 0.3);
  CHECK(std::abs(sol["parasitic_partner_x_nm"].get<double>() - 1540.0) < 0.3);
  CHECK(std::abs(sol["parasitic_partner_y_nm"].get<double>() - 1560.0) < 0.3);
  CHECK(dump_summary(s) == dump_summary(cmd_phasematch(default_config())));

  RunConfig iso = default_config();
  iso.fiber.birefringence = 0.0;
  CHECK_THROWS_AS(cmd_phasematch(iso), PhysicsError);
}

TEST_CASE("jsi command backends agree") {
  // A long pump confines alpha to the grid diagonal, keeping quadrature cheap.
  RunConfig c = default_config();
  c.pumps.duration_fwhm_s = 200e-12;
  const fs::path dir = scratch("jsi_backends");
  JsiOptions o;
  o.process = Process::xx;
  o.points = 64;
  o.out_dir = dir / "closed";
  cmd_jsi(c, o);
  o.backend = Backend::quadrature;
  o.out_dir = dir / "quad";
  cmd_jsi(c, o);

  std::ifstream a(dir / "closed" / "jsi_xx_grating.csv");
  std::ifstream b(dir / "quad" / "jsi_xx_grating.csv");
  const HeatmapTable ta = read_heatmap_csv(a);
  const HeatmapTable tb = read_heatmap_csv(b);
  REQUIRE(ta.values.size() == 64 * 64);
  CHECK(ta.axis_1_nm == tb.axis_1_nm);
  double peak = 0.0;
  std::size_t nonzero = 0;
  for (double v : ta.values) {
    peak = std::max(peak, v);
    nonzero += v > 0.0;
  }
  CHECK(nonzero > 64);
  // Relative per cell, with the log-heatmap floor as the absolute scale.
  for (std::size_t k = 0; k < ta.values.size(); ++k) {
    CHECK(std::abs(ta.values[k] - tb.values[k]) <= 1e-9 * std::max(ta.values[k], kLogHeatmapFloor * peak));
  }
}

TEST_CASE("command line") {
  const fs::path dir = scratch("cli");
  const std::string config = "--config \"" + (kSource / "configs" / "default.json").string() + "\"";

  CHECK(run_cli("phasematch " + config + " --out \"" + (dir / "a").string() + "\"", dir / "a.log") == 0);
  CHECK(run_cli("phasematch " + config + " --out \"" + (dir / "b").string() + "\"", dir / "b.log") == 0);
  CHECK(slurp(dir / "a" / "phasematch_summary.json") == slurp(dir / "b" / "phasematch_summary.json"));
  CHECK(slurp(dir / "a.log") == slurp(dir / "b.log"));

  write(dir / "iso.json", R"({"fiber": {"birefringence": 0.0}})");
  CHECK(run_cli("phasematch --config \"" + (dir / "iso.json").string() + "\"", dir / "iso.log") != 0);
  CHECK(slurp(dir / "iso.log").find("no phase-matched detuning") != std::string::npos);

  write(dir / "bad.json", R"({"fiber": {"length_m": -1}})");
  CHECK(run_cli("grating --config \"" + (dir / "bad.json").string() + "\"", dir / "bad.log") != 0);
  CHECK(slurp(dir / "bad.log").find("fiber.length_m") != std::string::npos);

  write(dir / "empty.json", "");
  CHECK(run_cli("grating --config \"" + (dir / "empty.json").string() + "\"", dir / "empty.log") != 0);

  CHECK(run_cli("grating " + config, dir / "grating.log") == 0);
  CHECK(run_cli("jsi --process zz", dir / "zz.log") != 0);

  const std::string small = " --points 96 --out \"" + (dir / "jsi").string() + "\"";
  CHECK(run_cli("jsi " + config + small + " --no-grating --log-heatmap", dir / "jsi1.log") == 0);
  CHECK(run_cli("jsi " + config + small + " --process xy", dir / "jsi2.log") == 0);
  CHECK(fs::exists(dir / "jsi" / "jsi_all_nograting.csv"));
  CHECK(fs::exists(dir / "jsi" / "jsi_all_nograting.pgm"));
  CHECK(fs::exists(dir / "jsi" / "jsi_xy_grating.csv"));
  std::ifstream pgm(dir / "jsi" / "jsi_xy_grating.pgm", std::ios::binary);
  const PgmImage img = read_pgm(pgm);
  CHECK(img.width == 96);
  CHECK(img.height == 96);

  const std::string car_out = " --out \"" + (dir / "car").string() + "\" --points 201";
  CHECK(run_cli("car " + config + car_out + " --zeta2-steps 1 --zeta2-min 0.01", dir / "car.log") == 0);
  const std::string csv = slurp(dir / "car" / "car.csv");
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 2);
  CHECK(run_cli("car " + config + car_out + " --zeta2-min 0", dir / "car0.log") != 0);
}

TEST_CASE("car command summary") {
  RunConfig c = default_config();
  c.grid.points = 201;
  CarOptions o;
  o.out_dir = scratch("car_summary");
  const nlohmann::json s = cmd_car(c, o);
  const double rx = s["no_grating"]["r_x"].get<double>();
  const double ry = s["no_grating"]["r_y"].get<double>();
  CHECK(s["ideal_improvement_factor"].get<double>() == doctest::Approx((1 + 2.25 * rx) * (1 + 2.25 * ry)).epsilon(1e-14));
  CHECK(s["car_improvement_factor"].get<double>() ==
        doctest::Approx(s["ideal_improvement_factor"].get<double>()).epsilon(0.01));
  CHECK(s["suppression_db_x"].get<double>() > 30.0);
  CHECK(s["suppression_db_y"].get<double>() > 30.0);
  std::ifstream csv(*o.out_dir / "car.csv");
  std::string header;
  std::getline(csv, header);
  CHECK(header == "zeta2,car_no_grating,car_with_grating,ideal_max");
}
