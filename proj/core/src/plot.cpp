#include "ldpgraph/plot.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <stdexcept>
#include <vector>

namespace ldpgraph {

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  fields.push_back(cur);
  return fields;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                    "#9467bd", "#8c564b", "#17becf", "#7f7f7f"};

}  // namespace

void render_plot(std::istream& csv, const std::string& x_field,
                 const std::string& y_field, const std::string& series_field,
                 std::ostream& svg) {
  std::string line;
  if (!std::getline(csv, line)) throw std::runtime_error("render_plot: empty CSV");
  const auto header = split_line(line);
  auto column = [&](const std::string& name) {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) {
      throw std::runtime_error("render_plot: no column named '" + name + "'");
    }
    return static_cast<std::size_t>(it - header.begin());
  };
  const std::size_t xi = column(x_field);
  const std::size_t yi = column(y_field);
  const std::size_t si = column(series_field);

  // Mean y per (series, x); series keep first-appearance order.
  std::vector<std::string> series_order;
  std::map<std::string, std::map<double, std::pair<double, std::size_t>>> acc;
  while (std::getline(csv, line)) {
    if (line.empty()) continue;
    const auto f = split_line(line);
    if (f.size() <= std::max({xi, yi, si})) {
      throw std::runtime_error("render_plot: short row: " + line);
    }
    if (f[yi].empty()) continue;
    const std::string& key = f[si];
    if (acc.find(key) == acc.end()) series_order.push_back(key);
    auto& cell = acc[key][std::stod(f[xi])];
    cell.first += std::stod(f[yi]);
    cell.second += 1;
  }
  if (series_order.empty()) {
    throw std::runtime_error("render_plot: no plottable rows");
  }

  double xmin = 0, xmax = 0, ymin = 0, ymax = 0;
  bool first = true;
  for (const auto& [key, points] : acc) {
    for (const auto& [x, sum_count] : points) {
      const double y = sum_count.first / static_cast<double>(sum_count.second);
      if (first) {
        xmin = xmax = x;
        ymin = ymax = y;
        first = false;
      } else {
        xmin = std::min(xmin, x);
        xmax = std::max(xmax, x);
        ymin = std::min(ymin, y);
        ymax = std::max(ymax, y);
      }
    }
  }
  if (xmax == xmin) xmax = xmin + 1.0;
  if (ymax == ymin) ymax = ymin + 1.0;

  constexpr double kW = 640, kH = 440, kL = 70, kR = 160, kT = 30, kB = 50;
  const double plot_w = kW - kL - kR;
  const double plot_h = kH - kT - kB;
  auto sx = [&](double x) { return kL + (x - xmin) / (xmax - xmin) * plot_w; };
  auto sy = [&](double y) { return kT + plot_h - (y - ymin) / (ymax - ymin) * plot_h; };

  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW
      << "\" height=\"" << kH << "\" viewBox=\"0 0 " << kW << ' ' << kH << "\">\n";
  svg << "<rect width=\"" << kW << "\" height=\"" << kH << "\" fill=\"white\"/>\n";
  // Axes.
  svg << "<line x1=\"" << kL << "\" y1=\"" << kT + plot_h << "\" x2=\""
      << kL + plot_w << "\" y2=\"" << kT + plot_h
      << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  svg << "<line x1=\"" << kL << "\" y1=\"" << kT << "\" x2=\"" << kL << "\" y2=\""
      << kT + plot_h << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  // Axis labels and extreme ticks.
  svg << "<text x=\"" << kL << "\" y=\"" << kH - 14
      << "\" font-size=\"12\" text-anchor=\"middle\">" << fmt(xmin) << "</text>\n";
  svg << "<text x=\"" << kL + plot_w << "\" y=\"" << kH - 14
      << "\" font-size=\"12\" text-anchor=\"middle\">" << fmt(xmax) << "</text>\n";
  svg << "<text x=\"" << kL - 8 << "\" y=\"" << kT + plot_h
      << "\" font-size=\"12\" text-anchor=\"end\">" << fmt(ymin) << "</text>\n";
  svg << "<text x=\"" << kL - 8 << "\" y=\"" << kT + 10
      << "\" font-size=\"12\" text-anchor=\"end\">" << fmt(ymax) << "</text>\n";
  svg << "<text x=\"" << kL + plot_w / 2 << "\" y=\"" << kH - 30
      << "\" font-size=\"13\" text-anchor=\"middle\">" << x_field << "</text>\n";
  svg << "<text x=\"18\" y=\"" << kT + plot_h / 2
      << "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
      << kT + plot_h / 2 << ")\">" << y_field << "</text>\n";

  std::size_t color = 0;
  for (const std::string& key : series_order) {
    const char* stroke = kPalette[color % (sizeof(kPalette) / sizeof(kPalette[0]))];
    svg << "<polyline fill=\"none\" stroke=\"" << stroke
        << "\" stroke-width=\"2\" points=\"";
    bool first_pt = true;
    for (const auto& [x, sum_count] : acc[key]) {
      const double y = sum_count.first / static_cast<double>(sum_count.second);
      if (!first_pt) svg << ' ';
      svg << fmt(sx(x)) << ',' << fmt(sy(y));
      first_pt = false;
    }
    svg << "\"/>\n";
    const double ly = kT + 16 + 18 * static_cast<double>(color);
    svg << "<line x1=\"" << kW - kR + 10 << "\" y1=\"" << ly - 4 << "\" x2=\""
        << kW - kR + 34 << "\" y2=\"" << ly - 4 << "\" stroke=\"" << stroke
        << "\" stroke-width=\"2\"/>\n";
    svg << "<text x=\"" << kW - kR + 40 << "\" y=\"" << ly
        << "\" font-size=\"12\">" << (key.empty() ? "(none)" : key) << "</text>\n";
    ++color;
  }
  svg << "</svg>\n";
}

void render_plot_file(const std::string& csv_path, const std::string& x_field,
                      const std::string& y_field, const std::string& series_field,
                      const std::string& svg_path) {
  std::ifstream in(csv_path);
  if (!in) throw std::runtime_error("render_plot: cannot open " + csv_path);
  std::ofstream out(svg_path, std::ios::binary);
  if (!out) throw std::runtime_error("render_plot: cannot write " + svg_path);
  render_plot(in, x_field, y_field, series_field, out);
}

}  // namespace ldpgraph
