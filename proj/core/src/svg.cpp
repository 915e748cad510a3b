#include "wtv/svg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "wtv/util.hpp"

namespace wtv {
namespace {

constexpr double kWidth = 840.0;
constexpr double kHeight = 520.0;
constexpr double kMarginLeft = 70.0;
constexpr double kMarginRight = 30.0;
constexpr double kMarginTop = 40.0;
constexpr double kMarginBottom = 50.0;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  void include(double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void pad() {
    if (!(hi > lo)) {
      double c = std::isfinite(lo) ? lo : 0.0;
      lo = c - 1.0;
      hi = c + 1.0;
    } else {
      double m = 0.05 * (hi - lo);
      lo -= m;
      hi += m;
    }
  }
  double unit(double v) const { return (v - lo) / (hi - lo); }
};

struct Mapper {
  Range x, y;
  double px(double v) const {
    return kMarginLeft + x.unit(v) * (kWidth - kMarginLeft - kMarginRight);
  }
  double py(double v) const {
    return kHeight - kMarginBottom -
           y.unit(v) * (kHeight - kMarginTop - kMarginBottom);
  }
};

void open_document(std::ostringstream& os, const std::string& title) {
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
     << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << ' '
     << kHeight << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" "
     << "font-family=\"sans-serif\" font-size=\"16\">" << title
     << "</text>\n";
}

void draw_frame(std::ostringstream& os, const Mapper& map) {
  double x0 = kMarginLeft, x1 = kWidth - kMarginRight;
  double y0 = kMarginTop, y1 = kHeight - kMarginBottom;
  os << "<rect x=\"" << x0 << "\" y=\"" << y0 << "\" width=\"" << x1 - x0
     << "\" height=\"" << y1 - y0
     << "\" fill=\"none\" stroke=\"#444\" stroke-width=\"1\"/>\n";
  auto label = [&](double px, double py, const std::string& text,
                   const char* anchor) {
    os << "<text x=\"" << px << "\" y=\"" << py << "\" text-anchor=\""
       << anchor << "\" font-family=\"sans-serif\" font-size=\"11\" "
       << "fill=\"#333\">" << text << "</text>\n";
  };
  label(x0, y1 + 16, fmt(map.x.lo), "middle");
  label(x1, y1 + 16, fmt(map.x.hi), "middle");
  label(x0 - 6, y1 + 4, fmt(map.y.lo), "end");
  label(x0 - 6, y0 + 4, fmt(map.y.hi), "end");
}

void draw_legend(std::ostringstream& os,
                 const std::vector<std::pair<std::string, std::string>>&
                     entries) {
  double x = kWidth - kMarginRight - 170.0;
  double y = kMarginTop + 16.0;
  for (const auto& [label, color] : entries) {
    os << "<line x1=\"" << x << "\" y1=\"" << y - 4 << "\" x2=\"" << x + 24
       << "\" y2=\"" << y - 4 << "\" stroke=\"" << color
       << "\" stroke-width=\"2\"/>\n";
    os << "<text x=\"" << x + 30 << "\" y=\"" << y
       << "\" font-family=\"sans-serif\" font-size=\"12\">" << label
       << "</text>\n";
    y += 18.0;
  }
}

void write_document(const std::string& path, const std::ostringstream& os) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << os.str() << "</svg>\n";
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace

SvgSeries series_of(const ScalarField& u, const std::string& label,
                    const std::string& color, double stroke_width) {
  require(u.grid().dimension() == 1, "series_of needs a 1D field");
  SvgSeries s;
  s.label = label;
  s.color = color;
  s.stroke_width = stroke_width;
  int n = u.grid().extent(0);
  s.x.reserve(n);
  s.y.reserve(n);
  for (int i = 0; i < n; ++i) {
    s.x.push_back(u.grid().coord(0, i));
    s.y.push_back(u(i));
  }
  return s;
}

void write_svg_lines(const std::string& path,
                     const std::vector<SvgSeries>& series,
                     const std::string& title) {
  require(!series.empty(), "write_svg_lines needs at least one series");
  Mapper map;
  for (const auto& s : series) {
    require(s.x.size() == s.y.size() && !s.x.empty(),
            "series must have matching nonempty x and y");
    for (double v : s.x) map.x.include(v);
    for (double v : s.y) map.y.include(v);
  }
  map.x.pad();
  map.y.pad();

  std::ostringstream os;
  open_document(os, title);
  draw_frame(os, map);
  std::vector<std::pair<std::string, std::string>> legend;
  for (const auto& s : series) {
    os << "<polyline fill=\"none\" stroke=\"" << s.color
       << "\" stroke-width=\"" << s.stroke_width << "\" points=\"";
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (i > 0) os << ' ';
      os << fmt(map.px(s.x[i])) << ',' << fmt(map.py(s.y[i]));
    }
    os << "\"/>\n";
    if (!s.label.empty()) legend.emplace_back(s.label, s.color);
  }
  draw_legend(os, legend);
  write_document(path, os);
}

std::vector<std::array<std::array<double, 2>, 2>> contour_segments(
    const ScalarField& u, double level) {
  require(u.grid().dimension() == 2, "contour_segments needs a 2D field");
  const Grid& grid = u.grid();
  int n0 = grid.extent(0), n1 = grid.extent(1);
  std::vector<std::array<std::array<double, 2>, 2>> segments;

  auto cross = [&](double a, double b) { return (level - a) / (b - a); };
  for (int r = 0; r + 1 < n0; ++r)
    for (int c = 0; c + 1 < n1; ++c) {
      double v00 = u(r, c), v01 = u(r, c + 1);
      double v10 = u(r + 1, c), v11 = u(r + 1, c + 1);
      int mask = (v00 > level) | (v01 > level) << 1 | (v11 > level) << 2 |
                 (v10 > level) << 3;
      if (mask == 0 || mask == 15) continue;

      double x0 = grid.coord(1, c), x1 = grid.coord(1, c + 1);
      double y0 = grid.coord(0, r), y1 = grid.coord(0, r + 1);
      // Crossing points on the four square edges (top, right, bottom, left).
      std::array<double, 2> top{x0 + cross(v00, v01) * (x1 - x0), y0};
      std::array<double, 2> right{x1, y0 + cross(v01, v11) * (y1 - y0)};
      std::array<double, 2> bottom{x0 + cross(v10, v11) * (x1 - x0), y1};
      std::array<double, 2> left{x0, y0 + cross(v00, v10) * (y1 - y0)};

      auto add = [&](std::array<double, 2> a, std::array<double, 2> b) {
        segments.push_back({a, b});
      };
      switch (mask) {
        case 1: case 14: add(top, left); break;
        case 2: case 13: add(top, right); break;
        case 3: case 12: add(left, right); break;
        case 4: case 11: add(right, bottom); break;
        case 6: case 9: add(top, bottom); break;
        case 7: case 8: add(left, bottom); break;
        case 5:
        case 10: {
          double center = 0.25 * (v00 + v01 + v10 + v11);
          bool center_above = center > level;
          bool corners_above = mask == 5;
          if (center_above == corners_above) {
            add(top, right);
            add(left, bottom);
          } else {
            add(top, left);
            add(right, bottom);
          }
          break;
        }
        default: break;
      }
    }
  return segments;
}

void write_svg_contours(const std::string& path, const ScalarField& u,
                        const std::vector<double>& levels,
                        const std::string& title) {
  require(u.grid().dimension() == 2, "write_svg_contours needs a 2D field");
  const Grid& grid = u.grid();
  Mapper map;
  map.x.include(grid.coord(1, 0));
  map.x.include(grid.coord(1, grid.extent(1) - 1));
  map.y.include(grid.coord(0, 0));
  map.y.include(grid.coord(0, grid.extent(0) - 1));
  map.x.pad();
  map.y.pad();

  std::ostringstream os;
  open_document(os, title);
  draw_frame(os, map);
  std::vector<std::pair<std::string, std::string>> legend;
  for (std::size_t k = 0; k < levels.size(); ++k) {
    const char* color = kPalette[k % (sizeof kPalette / sizeof *kPalette)];
    auto segments = contour_segments(u, levels[k]);
    for (const auto& seg : segments)
      os << "<line x1=\"" << fmt(map.px(seg[0][0])) << "\" y1=\""
         << fmt(map.py(seg[0][1])) << "\" x2=\"" << fmt(map.px(seg[1][0]))
         << "\" y2=\"" << fmt(map.py(seg[1][1])) << "\" stroke=\"" << color
         << "\" stroke-width=\"1\"/>\n";
    legend.emplace_back("level " + fmt(levels[k]), color);
  }
  draw_legend(os, legend);
  write_document(path, os);
}

}  // namespace wtv
