#pragma once

#include <istream>
#include <ostream>
#include <string>

namespace ldpgraph {

/// Reads a results CSV and writes a line chart as standalone SVG text: one
/// polyline of mean y versus x per distinct value of the series column,
/// linear axes, legend. No external renderer involved; identical input bytes
/// give identical output bytes.
void render_plot(std::istream& csv, const std::string& x_field,
                 const std::string& y_field, const std::string& series_field,
                 std::ostream& svg);

void render_plot_file(const std::string& csv_path, const std::string& x_field,
                      const std::string& y_field, const std::string& series_field,
                      const std::string& svg_path);

}  // namespace ldpgraph
