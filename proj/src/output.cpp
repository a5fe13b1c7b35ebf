#include "sfwm/output.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "sfwm/units.hpp"

namespace sfwm {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

double parse_double(const std::string& text) {
  std::size_t used = 0;
  const double v = std::stod(text, &used);
  if (used != text.size()) throw std::runtime_error("malformed number '" + text + "'");
  return v;
}

}  // namespace

std::string format_general(double value, int significant) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", significant, value);
  return buf;
}

void write_heatmap_csv(std::ostream& out, const JsiGrid& grid) {
  std::string line = "lambda_nm";
  for (double w : grid.axis_2) line += "," + format_general(nm_from_omega(w), 9);
  out << line << '\n';
  for (std::size_t i = 0; i < grid.rows(); ++i) {
    line = format_general(nm_from_omega(grid.axis_1[i]), 9);
    for (std::size_t j = 0; j < grid.cols(); ++j) line += "," + format_general(grid.at(i, j), 17);
    out << line << '\n';
  }
}

HeatmapTable read_heatmap_csv(std::istream& in) {
  HeatmapTable t;
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("heatmap csv: empty");
  const auto header = split_csv_line(line);
  for (std::size_t j = 1; j < header.size(); ++j) t.axis_2_nm.push_back(parse_double(header[j]));
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != header.size()) throw std::runtime_error("heatmap csv: ragged row");
    t.axis_1_nm.push_back(parse_double(cells[0]));
    for (std::size_t j = 1; j < cells.size(); ++j) t.values.push_back(parse_double(cells[j]));
  }
  return t;
}

PgmImage render_heatmap(const JsiGrid& grid, bool log_scale) {
  PgmImage img;
  img.width = grid.cols();
  img.height = grid.rows();
  img.pixels.assign(img.width * img.height, 0);
  const double peak = grid.values.empty() ? 0.0 : *std::max_element(grid.values.begin(), grid.values.end());
  if (!(peak > 0.0)) return img;
  const double span = -std::log10(kLogHeatmapFloor);
  for (std::size_t k = 0; k < grid.values.size(); ++k) {
    double level = grid.values[k] / peak;
    if (log_scale) level = level > kLogHeatmapFloor ? 1.0 + std::log10(level) / span : 0.0;
    img.pixels[k] = static_cast<std::uint8_t>(std::lround(std::clamp(level, 0.0, 1.0) * 255.0));
  }
  return img;
}

void write_pgm(std::ostream& out, const PgmImage& image) {
  out << "P5\n" << image.width << ' ' << image.height << "\n255\n";
  out.write(reinterpret_cast<const char*>(image.pixels.data()), static_cast<std::streamsize>(image.pixels.size()));
}

PgmImage read_pgm(std::istream& in) {
  std::string magic;
  PgmImage img;
  int maxval = 0;
  in >> magic >> img.width >> img.height >> maxval;
  if (magic != "P5" || maxval != 255 || !in) throw std::runtime_error("pgm: unsupported header");
  in.get();
  img.pixels.resize(img.width * img.height);
  in.read(reinterpret_cast<char*>(img.pixels.data()), static_cast<std::streamsize>(img.pixels.size()));
  if (!in) throw std::runtime_error("pgm: truncated pixel data");
  return img;
}

void write_car_csv(std::ostream& out, const CarCurve& without_grating, const CarCurve& with_grating) {
  if (without_grating.zeta2 != with_grating.zeta2) throw std::invalid_argument("car curves: zeta2 grids differ");
  out << "zeta2,car_no_grating,car_with_grating,ideal_max\n";
  for (std::size_t i = 0; i < without_grating.zeta2.size(); ++i) {
    const double z = without_grating.zeta2[i];
    out << format_general(z, 17) << ',' << format_general(without_grating.car[i], 17) << ','
        << format_general(with_grating.car[i], 17) << ',' << format_general(1.0 / z, 17) << '\n';
  }
}

std::string dump_summary(const nlohmann::json& summary) {
  // nlohmann::json objects are std::map backed, so keys come out sorted.
  return summary.dump(2) + "\n";
}

void write_text_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << contents;
}

}  // namespace sfwm
