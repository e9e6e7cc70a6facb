#include "hardy/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "hardy/errors.hpp"
#include "hardy/format.hpp"

namespace hardy::io {
namespace {

void comment_line(std::string& out, std::string_view comment) {
  out += "# ";
  for (char c : comment) out += (c == '\n' || c == '\r') ? ' ' : c;
  out += '\n';
}

std::string fixed(double v, int decimals) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os.setf(std::ios::fixed);
  os.precision(decimals);
  os << (std::abs(v) < 0.5 * std::pow(10.0, -decimals) ? 0.0 : v);
  return os.str();
}

std::string escape_xml(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string format_double(double v) { return hardy::format_double(v); }

std::string matrix_csv(const OperatorMatrix& m, std::string_view comment) {
  std::string out;
  comment_line(out, comment);
  out += "j,k,re,im\n";
  for (int j = 0; j < m.dim(); ++j)
    for (int k = 0; k < m.dim(); ++k) {
      const Complex v = m(j, k);
      out += std::to_string(j) + ',' + std::to_string(k) + ',' + format_double(v.real()) + ',' +
             format_double(v.imag()) + '\n';
    }
  return out;
}

std::string points_csv(std::span<const Complex> points, std::string_view comment) {
  std::string out;
  comment_line(out, comment);
  out += "re,im\n";
  for (const Complex p : points) out += format_double(p.real()) + ',' + format_double(p.imag()) + '\n';
  return out;
}

std::string compactness_csv(const CompactnessReport& report, std::string_view comment) {
  std::string out;
  comment_line(out, comment);
  out += "N,k,sigma\n";
  for (std::size_t i = 0; i < report.dims.size(); ++i)
    for (std::size_t j = 0; j < report.ks.size(); ++j)
      out += std::to_string(report.dims[i]) + ',' + std::to_string(report.ks[j]) + ',' +
             format_double(report.sigma[i][j]) + '\n';
  const auto& p = report.policy;
  out += "# verdict=" + to_string(report.verdict) + " k_star=" + std::to_string(p.k_star) +
         " k_dagger=" + std::to_string(p.k_dagger) + " small_ratio=" + format_double(p.small_ratio) +
         " plateau_ratio=" + format_double(p.plateau_ratio) + " floor_ratio=" + format_double(p.floor_ratio) +
         " growth_tolerance=" + format_double(p.growth_tolerance) + " noise_floor=" + format_double(p.noise_floor) +
         " (engineering thresholds)\n";
  return out;
}

std::string residual_csv(std::span<const double> residuals, std::string_view comment) {
  std::string out;
  comment_line(out, comment);
  out += "k,residual\n";
  for (std::size_t k = 0; k < residuals.size(); ++k) out += std::to_string(k) + ',' + format_double(residuals[k]) + '\n';
  return out;
}

std::string render_svg(std::span<const Complex> points, const SvgStyle& style) {
  if (points.empty()) throw ArgumentError("cannot render an empty point set");
  if (style.width < 1 || style.height < 1) throw ArgumentError("SVG size must be positive");

  double xmin = points[0].real(), xmax = xmin, ymin = points[0].imag(), ymax = ymin;
  for (const Complex p : points) {
    if (!std::isfinite(p.real()) || !std::isfinite(p.imag())) throw ArgumentError("cannot render non-finite points");
    xmin = std::min(xmin, p.real());
    xmax = std::max(xmax, p.real());
    ymin = std::min(ymin, p.imag());
    ymax = std::max(ymax, p.imag());
  }
  // A degenerate extent is widened to a unit box centred on the data.
  if (xmax - xmin == 0.0) xmin -= 0.5, xmax += 0.5;
  if (ymax - ymin == 0.0) ymin -= 0.5, ymax += 0.5;
  const double mx = 0.05 * (xmax - xmin), my = 0.05 * (ymax - ymin);
  xmin -= mx, xmax += mx, ymin -= my, ymax += my;

  const double w = style.width, h = style.height;
  auto px = [&](double x) { return (x - xmin) / (xmax - xmin) * w; };
  auto py = [&](double y) { return (ymax - y) / (ymax - ymin) * h; };

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(style.width) + "\" height=\"" +
         std::to_string(style.height) + "\" viewBox=\"0 0 " + std::to_string(style.width) + ' ' +
         std::to_string(style.height) + "\">\n";
  if (!style.title.empty()) out += "<title>" + escape_xml(style.title) + "</title>\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (ymin <= 0.0 && ymax >= 0.0)
    out += "<line x1=\"0\" y1=\"" + fixed(py(0.0), 3) + "\" x2=\"" + fixed(w, 3) + "\" y2=\"" + fixed(py(0.0), 3) +
           "\" stroke=\"#999999\" stroke-width=\"0.5\"/>\n";
  if (xmin <= 0.0 && xmax >= 0.0)
    out += "<line x1=\"" + fixed(px(0.0), 3) + "\" y1=\"0\" x2=\"" + fixed(px(0.0), 3) + "\" y2=\"" + fixed(h, 3) +
           "\" stroke=\"#999999\" stroke-width=\"0.5\"/>\n";
  out += "<g fill=\"" + escape_xml(style.color) + "\">\n";
  for (const Complex p : points)
    out += "<circle cx=\"" + fixed(px(p.real()), 3) + "\" cy=\"" + fixed(py(p.imag()), 3) + "\" r=\"" +
           fixed(style.marker_radius, 3) + "\"/>\n";
  out += "</g>\n</svg>\n";
  return out;
}

void write_file(const std::string& path, std::string_view contents) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  f.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  f.close();
  if (!f) throw IoError("failed writing '" + path + "'");
}

}  // namespace hardy::io
