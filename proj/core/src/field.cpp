#include "wtv/field.hpp"

#include <algorithm>
#include <cmath>

#include "wtv/util.hpp"

namespace wtv {

ScalarField::ScalarField(Grid grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  require(values_.size() == grid_.cell_count(),
          "ScalarField: value count does not match grid");
  for (double v : values_)
    require(std::isfinite(v), "ScalarField: values must be finite");
}

ScalarField::ScalarField(Grid grid, double fill)
    : grid_(grid), values_(grid.cell_count(), fill) {
  require(std::isfinite(fill), "ScalarField: fill value must be finite");
}

double ScalarField::min() const {
  return *std::min_element(values_.begin(), values_.end());
}

double ScalarField::max() const {
  return *std::max_element(values_.begin(), values_.end());
}

double ScalarField::sup_norm() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::fabs(v));
  return m;
}

BinaryField::BinaryField(Grid grid, std::vector<std::uint8_t> values)
    : grid_(grid), values_(std::move(values)) {
  require(values_.size() == grid_.cell_count(),
          "BinaryField: value count does not match grid");
  for (auto v : values_)
    require(v == 0 || v == 1, "BinaryField: values must be 0 or 1");
}

BinaryField::BinaryField(Grid grid, bool fill)
    : grid_(grid), values_(grid.cell_count(), fill ? 1 : 0) {}

std::size_t BinaryField::popcount() const {
  std::size_t n = 0;
  for (auto v : values_) n += v;
  return n;
}

ScalarField BinaryField::to_scalar() const {
  std::vector<double> v(values_.begin(), values_.end());
  return ScalarField(grid_, std::move(v));
}

bool BinaryField::operator==(const BinaryField& other) const {
  return grid_.same_layout(other.grid_) && values_ == other.values_;
}

VectorField::VectorField(Grid grid, double fill) : grid_(grid) {
  comp_[0].assign(grid_.edge_count(0), fill);
  if (grid_.dimension() == 2) comp_[1].assign(grid_.edge_count(1), fill);
}

std::size_t VectorField::edge_index(int axis, int i0, int i1) const {
  if (grid_.dimension() == 1) return std::size_t(i0);
  // Edge grid for axis 0 is edge_extent(0) x extent(1); for axis 1 it is
  // extent(0) x edge_extent(1). Both stay row-major.
  int cols = axis == 0 ? grid_.extent(1) : grid_.edge_extent(1);
  return std::size_t(i0) * std::size_t(cols) + std::size_t(i1);
}

}  // namespace wtv
