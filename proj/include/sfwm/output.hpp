#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "sfwm/jointspectrum.hpp"
#include "sfwm/metrics.hpp"

namespace sfwm {

/// printf "%.*g" in the C locale.
std::string format_general(double value, int significant);

/// Parsed heatmap CSV: axis wavelengths in nm plus the row-major matrix.
struct HeatmapTable {
  std::vector<double> axis_1_nm;
  std::vector<double> axis_2_nm;
  std::vector<double> values;
};

/// Corner cell, then axis_2 wavelengths across the first row; each further row
/// starts with its axis_1 wavelength. Axes at 9 significant digits, values at
/// 17 so the matrix round-trips exactly. LF line endings.
void write_heatmap_csv(std::ostream& out, const JsiGrid& grid);
HeatmapTable read_heatmap_csv(std::istream& in);

inline constexpr double kLogHeatmapFloor = 1e-12;  // relative to the peak

struct PgmImage {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<std::uint8_t> pixels;  // row-major, top row first
};

/// 8-bit grayscale with axis_1 increasing downwards and axis_2 to the right.
/// Log mapping spans [floor * peak, peak] in log10.
PgmImage render_heatmap(const JsiGrid& grid, bool log_scale);
void write_pgm(std::ostream& out, const PgmImage& image);
PgmImage read_pgm(std::istream& in);

/// zeta2, car_no_grating, car_with_grating, ideal_max.
void write_car_csv(std::ostream& out, const CarCurve& without_grating, const CarCurve& with_grating);

/// Sorted keys, two-space indent, trailing newline.
std::string dump_summary(const nlohmann::json& summary);

void write_text_file(const std::filesystem::path& path, const std::string& contents);

}  // namespace sfwm
