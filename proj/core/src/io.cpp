#include "subfrac/io.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace subfrac::io {
namespace {

std::string escape_xml(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char ch : s) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += ch;
    }
  }
  return out;
}

std::string escape_csv(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

struct Range {
  double lo = 0.0;
  double hi = 1.0;

  void include(double v) {
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
};

// Tick spacing of the form {1,2,5} * 10^k giving roughly `target` intervals.
double nice_step(double span, int target) {
  const double raw = span / target;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double frac = raw / mag;
  if (frac <= 1.5) return mag;
  if (frac <= 3.5) return 2.0 * mag;
  if (frac <= 7.5) return 5.0 * mag;
  return 10.0 * mag;
}

std::vector<double> ticks(double lo, double hi, int target) {
  const double step = nice_step(hi - lo, target);
  std::vector<double> out;
  double v = std::ceil(lo / step - 1e-9) * step;
  for (; v <= hi + 1e-9 * step; v += step) out.push_back(v == 0.0 ? 0.0 : v);
  return out;
}

}  // namespace

void write_file(const std::string& path, const std::string& content) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) return "0";
  if (v == std::floor(v) && std::abs(v) < 1e15) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(0) << v;
    return os.str();
  }
  for (int prec = 1; prec <= 17; ++prec) {
    std::ostringstream os;
    os << std::setprecision(prec) << v;
    if (std::stod(os.str()) == v) return os.str();
  }
  return "0";
}

CsvWriter::CsvWriter(std::vector<std::string> header) : header_(std::move(header)) {}

void CsvWriter::add_row(const std::vector<std::string>& cells) {
  if (cells.size() != header_.size())
    throw std::logic_error("csv row has " + std::to_string(cells.size()) + " cells, header has " +
                           std::to_string(header_.size()));
  rows_.push_back(cells);
}

std::string CsvWriter::str() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < header_.size(); ++i) {
    if (i) os << ',';
    os << escape_csv(header_[i]);
  }
  os << '\n';
  for (const auto& row : rows_) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) os << ',';
      os << escape_csv(row[i]);
    }
    os << '\n';
  }
  return os.str();
}

std::string render_plot_svg(const std::string& title, const std::string& x_label,
                            const std::string& y_label, const std::vector<PlotSeries>& series) {
  constexpr double kW = 640, kH = 420;
  constexpr double kLeft = 68, kRight = 18, kTop = 40, kBottom = 50;

  bool any = false;
  Range xr, yr;
  for (const auto& s : series) {
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!any) {
        xr.lo = xr.hi = s.x[i];
        yr.lo = yr.hi = s.y[i];
        any = true;
      }
      xr.include(s.x[i]);
      const double e = i < s.y_err.size() ? s.y_err[i] : 0.0;
      yr.include(s.y[i] - e);
      yr.include(s.y[i] + e);
    }
  }
  if (!any) {
    xr = {0.0, 1.0};
    yr = {0.0, 1.0};
  }
  auto pad = [](Range& r) {
    if (r.hi - r.lo < 1e-300) {
      const double d = std::max(0.5, std::abs(r.lo) * 0.1);
      r.lo -= d;
      r.hi += d;
    } else {
      const double d = 0.05 * (r.hi - r.lo);
      r.lo -= d;
      r.hi += d;
    }
  };
  pad(xr);
  pad(yr);

  const auto px = [&](double x) { return kLeft + (x - xr.lo) / (xr.hi - xr.lo) * (kW - kLeft - kRight); };
  const auto py = [&](double y) { return kH - kBottom - (y - yr.lo) / (yr.hi - yr.lo) * (kH - kTop - kBottom); };

  std::ostringstream os;
  os << std::setprecision(8);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH
     << "\" viewBox=\"0 0 " << kW << " " << kH << "\" font-family=\"sans-serif\">\n";
  os << "<rect width=\"" << kW << "\" height=\"" << kH << "\" fill=\"white\"/>\n";
  os << "<text x=\"" << kW / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">"
     << escape_xml(title) << "</text>\n";

  for (double t : ticks(xr.lo, xr.hi, 6)) {
    const double gx = px(t);
    os << "<line x1=\"" << gx << "\" y1=\"" << kTop << "\" x2=\"" << gx << "\" y2=\""
       << kH - kBottom << "\" stroke=\"#e0e0e0\"/>\n";
    os << "<text x=\"" << gx << "\" y=\"" << kH - kBottom + 16
       << "\" text-anchor=\"middle\" font-size=\"11\">" << fmt(t) << "</text>\n";
  }
  for (double t : ticks(yr.lo, yr.hi, 6)) {
    const double gy = py(t);
    os << "<line x1=\"" << kLeft << "\" y1=\"" << gy << "\" x2=\"" << kW - kRight << "\" y2=\""
       << gy << "\" stroke=\"#e0e0e0\"/>\n";
    os << "<text x=\"" << kLeft - 6 << "\" y=\"" << gy + 4
       << "\" text-anchor=\"end\" font-size=\"11\">" << fmt(t) << "</text>\n";
  }
  os << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << kW - kLeft - kRight
     << "\" height=\"" << kH - kTop - kBottom << "\" fill=\"none\" stroke=\"#404040\"/>\n";
  os << "<text x=\"" << (kLeft + kW - kRight) / 2 << "\" y=\"" << kH - 14
     << "\" text-anchor=\"middle\" font-size=\"12\">" << escape_xml(x_label) << "</text>\n";
  os << "<text x=\"16\" y=\"" << (kTop + kH - kBottom) / 2
     << "\" text-anchor=\"middle\" font-size=\"12\" transform=\"rotate(-90 16 "
     << (kTop + kH - kBottom) / 2 << ")\">" << escape_xml(y_label) << "</text>\n";

  for (const auto& s : series) {
    if (s.line && s.x.size() > 1) {
      os << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.6\" points=\"";
      for (std::size_t i = 0; i < s.x.size(); ++i)
        os << px(s.x[i]) << ',' << py(s.y[i]) << (i + 1 < s.x.size() ? " " : "");
      os << "\"/>\n";
    }
    for (std::size_t i = 0; i < s.y_err.size() && i < s.x.size(); ++i) {
      if (s.y_err[i] <= 0.0) continue;
      const double gx = px(s.x[i]);
      const double y0 = py(s.y[i] - s.y_err[i]);
      const double y1 = py(s.y[i] + s.y_err[i]);
      os << "<line x1=\"" << gx << "\" y1=\"" << y0 << "\" x2=\"" << gx << "\" y2=\"" << y1
         << "\" stroke=\"" << s.color << "\"/>\n";
      os << "<line x1=\"" << gx - 3 << "\" y1=\"" << y0 << "\" x2=\"" << gx + 3 << "\" y2=\"" << y0
         << "\" stroke=\"" << s.color << "\"/>\n";
      os << "<line x1=\"" << gx - 3 << "\" y1=\"" << y1 << "\" x2=\"" << gx + 3 << "\" y2=\"" << y1
         << "\" stroke=\"" << s.color << "\"/>\n";
    }
    if (s.points)
      for (std::size_t i = 0; i < s.x.size(); ++i)
        os << "<circle cx=\"" << px(s.x[i]) << "\" cy=\"" << py(s.y[i])
           << "\" r=\"2.6\" fill=\"" << s.color << "\"/>\n";
  }

  double ly = kTop + 14;
  for (const auto& s : series) {
    if (s.label.empty()) continue;
    const double lx = kW - kRight - 150;
    os << "<line x1=\"" << lx << "\" y1=\"" << ly - 4 << "\" x2=\"" << lx + 22 << "\" y2=\""
       << ly - 4 << "\" stroke=\"" << s.color << "\" stroke-width=\"2\"/>\n";
    os << "<text x=\"" << lx + 28 << "\" y=\"" << ly << "\" font-size=\"11\">"
       << escape_xml(s.label) << "</text>\n";
    ly += 16;
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace subfrac::io
