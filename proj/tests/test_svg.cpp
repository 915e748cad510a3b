#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <string>

#include "doctest.h"
#include "wtv/io.hpp"
#include "wtv/svg.hpp"

using namespace wtv;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path dir;
  TempDir() {
    dir = fs::temp_directory_path() /
          ("wtv_svg_test_" + std::to_string(std::rand()));
    fs::create_directories(dir);
  }
  ~TempDir() { fs::remove_all(dir); }
  std::string path(const std::string& name) const { return (dir / name).string(); }
};

}  // namespace

TEST_CASE("line plot contains the svg scaffolding and both series") {
  TempDir tmp;
  Grid grid = Grid::line(16, 1.0 / 16);
  ScalarField g(grid, 0.0);
  ScalarField u(grid, 0.0);
  for (int i = 0; i < 16; ++i) {
    g.at(i) = std::sin(2.0 * 3.14159 * grid.coord(0, i));
    u.at(i) = 0.5 * g(i);
  }
  write_svg_lines(tmp.path("plot.svg"),
                  {series_of(g, "datum", "#888888"),
                   series_of(u, "result", "#d62728")},
                  "overlay");
  std::string text = read_text_file(tmp.path("plot.svg"));
  CHECK(text.find("<svg") != std::string::npos);
  CHECK(text.find("</svg>") != std::string::npos);
  CHECK(text.find("polyline") != std::string::npos);
  CHECK(text.find("datum") != std::string::npos);
  CHECK(text.find("result") != std::string::npos);
  CHECK(text.find("overlay") != std::string::npos);
}

TEST_CASE("series_of uses cell-center coordinates") {
  Grid grid = Grid::line(4, 0.25);
  ScalarField u(grid, {1.0, 2.0, 3.0, 4.0});
  SvgSeries s = series_of(u, "u", "#000000");
  REQUIRE(s.x.size() == 4);
  CHECK(s.x[0] == doctest::Approx(0.125));
  CHECK(s.x[3] == doctest::Approx(0.875));
  CHECK(s.y[2] == doctest::Approx(3.0));
}

TEST_CASE("contour of a linear ramp is a straight isoline") {
  // u(x0, x1) = x1 on the unit square: the 0.5 isoline is the vertical line
  // x = 0.5 in plot coordinates (x = axis 1).
  Grid grid = Grid::rect(8, 8, 0.125, 0.125);
  ScalarField u(grid, 0.0);
  for (int i0 = 0; i0 < 8; ++i0)
    for (int i1 = 0; i1 < 8; ++i1) u.at(i0, i1) = grid.coord(1, i1);
  auto segs = contour_segments(u, 0.5);
  CHECK(segs.size() >= 7);
  for (const auto& seg : segs) {
    CHECK(seg[0][0] == doctest::Approx(0.5));
    CHECK(seg[1][0] == doctest::Approx(0.5));
  }
}

TEST_CASE("contours skip levels outside the field range") {
  Grid grid = Grid::rect(4, 4, 0.25, 0.25);
  ScalarField u(grid, 0.3);
  CHECK(contour_segments(u, 2.0).empty());
  CHECK(contour_segments(u, -1.0).empty());
}

TEST_CASE("contour svg writes a file with one polyline group per level") {
  TempDir tmp;
  Grid grid = Grid::rect(16, 16, 1.0 / 16, 1.0 / 16);
  ScalarField u(grid, 0.0);
  for (int i0 = 0; i0 < 16; ++i0)
    for (int i1 = 0; i1 < 16; ++i1) {
      double x0 = grid.coord(0, i0) - 0.5, x1 = grid.coord(1, i1) - 0.5;
      u.at(i0, i1) = std::sqrt(x0 * x0 + x1 * x1);
    }
  write_svg_contours(tmp.path("c.svg"), u, {0.2, 0.4}, "rings");
  std::string text = read_text_file(tmp.path("c.svg"));
  CHECK(text.find("<svg") != std::string::npos);
  CHECK(text.find("rings") != std::string::npos);
  CHECK(text.find("0.2") != std::string::npos);
  CHECK(text.find("0.4") != std::string::npos);
}
