#pragma once

#include <span>
#include <string>
#include <string_view>

#include "hardy/gelfand.hpp"
#include "hardy/operators.hpp"
#include "hardy/verify.hpp"

/// CSV and SVG writers. Numbers use 17 significant digits, '.' as decimal
/// separator and '\n' line endings regardless of locale, so identical
/// inputs give byte-identical files.
namespace hardy::io {

std::string format_double(double v);

/// `# <comment>` line, header `j,k,re,im`, one row per entry.
std::string matrix_csv(const OperatorMatrix& m, std::string_view comment);
/// `# <comment>` line, header `re,im`, one row per point.
std::string points_csv(std::span<const Complex> points, std::string_view comment);
/// Header `N,k,sigma`, rows, then a `# verdict=...` record.
std::string compactness_csv(const CompactnessReport& report, std::string_view comment);
/// Header `k,residual`.
std::string residual_csv(std::span<const double> residuals, std::string_view comment);

struct SvgStyle {
  int width = 640;
  int height = 640;
  double marker_radius = 2.0;
  std::string color = "#1f4e9a";
  std::string title;
};

/// Scatter plot, axes auto-scaled with a 5% margin, one <circle> per point.
/// Throws ArgumentError for an empty point list.
std::string render_svg(std::span<const Complex> points, const SvgStyle& style = {});

/// Throws IoError when the file cannot be written.
void write_file(const std::string& path, std::string_view contents);

}  // namespace hardy::io
