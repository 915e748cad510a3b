#pragma once

#include <array>
#include <string>
#include <vector>

#include "wtv/field.hpp"

namespace wtv {

/// One curve in a line plot. x and y must have equal length.
struct SvgSeries {
  std::string label;
  std::string color = "#1f77b4";
  double stroke_width = 1.5;
  std::vector<double> x;
  std::vector<double> y;
};

/// Writes an overlay line plot (typically datum vs minimizer) with axes,
/// min/max tick labels and a legend.
void write_svg_lines(const std::string& path,
                     const std::vector<SvgSeries>& series,
                     const std::string& title);

/// Convenience: plots 1D fields against their cell-center coordinates.
SvgSeries series_of(const ScalarField& u, const std::string& label,
                    const std::string& color, double stroke_width = 1.5);

/// Marching-squares isolines of `u` at `level` over the cell-center lattice.
/// Returns a list of segments, each a pair of (x, y) = (coord axis 1, coord
/// axis 0) points. Saddle squares are split by the cell-average rule.
std::vector<std::array<std::array<double, 2>, 2>> contour_segments(
    const ScalarField& u, double level);

/// Contour plot of a 2D field at the given levels, one color per level,
/// with a frame and the level values in the legend.
void write_svg_contours(const std::string& path, const ScalarField& u,
                        const std::vector<double>& levels,
                        const std::string& title);

}  // namespace wtv
