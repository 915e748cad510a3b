#include "wtv/grid.hpp"

#include <cmath>

#include "wtv/util.hpp"

namespace wtv {

Grid Grid::line(int n, double h, Boundary bc, double origin) {
  require(n >= 1, "Grid::line: need at least one cell");
  require(h > 0.0 && std::isfinite(h), "Grid::line: spacing must be positive");
  Grid g;
  g.dim_ = 1;
  g.extent_ = {n, 1};
  g.spacing_ = {h, 1.0};
  g.origin_ = {origin, 0.0};
  g.boundary_ = bc;
  return g;
}

Grid Grid::rect(int n0, int n1, double h0, double h1, Boundary bc,
                double origin0, double origin1) {
  require(n0 >= 1 && n1 >= 1, "Grid::rect: need at least one cell per axis");
  require(h0 > 0.0 && h1 > 0.0 && std::isfinite(h0) && std::isfinite(h1),
          "Grid::rect: spacings must be positive");
  Grid g;
  g.dim_ = 2;
  g.extent_ = {n0, n1};
  g.spacing_ = {h0, h1};
  g.origin_ = {origin0, origin1};
  g.boundary_ = bc;
  return g;
}

std::size_t Grid::cell_count() const {
  std::size_t n = std::size_t(extent_[0]);
  if (dim_ == 2) n *= std::size_t(extent_[1]);
  return n;
}

double Grid::cell_measure() const {
  return dim_ == 2 ? spacing_[0] * spacing_[1] : spacing_[0];
}

std::size_t Grid::edge_count(int axis) const {
  std::size_t n = std::size_t(edge_extent(axis));
  if (dim_ == 2) n *= std::size_t(extent_[axis == 0 ? 1 : 0]);
  return n;
}

bool Grid::same_layout(const Grid& other) const {
  return dim_ == other.dim_ && extent_ == other.extent_ &&
         spacing_ == other.spacing_ && origin_ == other.origin_ &&
         boundary_ == other.boundary_;
}

}  // namespace wtv
