#pragma once

#include <string>
#include <vector>

namespace subfrac::io {

// Writes `content` to `path`, creating parent directories as needed.
void write_file(const std::string& path, const std::string& content);

// Shortest round-trip decimal form of v.
std::string fmt(double v);

class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> header);

  // Cell count must match the header.
  void add_row(const std::vector<std::string>& cells);

  std::string str() const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

struct PlotSeries {
  std::string label;
  std::string color = "#1f6fb2";
  std::vector<double> x;
  std::vector<double> y;
  std::vector<double> y_err;  // empty = no error bars
  bool line = true;
  bool points = false;
};

// Static SVG chart: axes with ticks, optional error bars, legend.
std::string render_plot_svg(const std::string& title, const std::string& x_label,
                            const std::string& y_label, const std::vector<PlotSeries>& series);

}  // namespace subfrac::io
