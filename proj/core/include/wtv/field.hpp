#pragma once

#include <cstdint>
#include <vector>

#include "wtv/grid.hpp"

namespace wtv {

/// Cell-sampled scalar function. Values are row-major and must be finite.
class ScalarField {
 public:
  ScalarField(Grid grid, std::vector<double> values);
  ScalarField(Grid grid, double fill);

  const Grid& grid() const { return grid_; }
  const std::vector<double>& values() const { return values_; }
  std::vector<double>& values() { return values_; }

  double operator()(int i0, int i1 = 0) const { return values_[grid_.index(i0, i1)]; }
  double& at(int i0, int i1 = 0) { return values_[grid_.index(i0, i1)]; }

  double min() const;
  double max() const;
  double sup_norm() const;

 private:
  Grid grid_;
  std::vector<double> values_;
};

/// Indicator of a cell set; 0/1 valued.
class BinaryField {
 public:
  BinaryField(Grid grid, std::vector<std::uint8_t> values);
  BinaryField(Grid grid, bool fill = false);

  const Grid& grid() const { return grid_; }
  const std::vector<std::uint8_t>& values() const { return values_; }
  std::vector<std::uint8_t>& values() { return values_; }

  bool operator()(int i0, int i1 = 0) const { return values_[grid_.index(i0, i1)] != 0; }
  void set(int i0, int i1, bool v) { values_[grid_.index(i0, i1)] = v ? 1 : 0; }

  std::size_t popcount() const;
  ScalarField to_scalar() const;

  bool operator==(const BinaryField& other) const;

 private:
  Grid grid_;
  std::vector<std::uint8_t> values_;
};

/// Dual/gradient-type field with one component per forward-difference edge,
/// stored per axis. Component `axis` at base cell i lives on the edge from i
/// to i + e_axis; under Neumann boundaries the trailing slot along that axis
/// does not exist (the forward difference there is structurally zero).
class VectorField {
 public:
  explicit VectorField(Grid grid, double fill = 0.0);

  const Grid& grid() const { return grid_; }
  const std::vector<double>& component(int axis) const { return comp_[axis]; }
  std::vector<double>& component(int axis) { return comp_[axis]; }

  /// Linear index of the edge along `axis` based at cell (i0, i1).
  /// For axis 0 the edge grid has edge_extent(0) rows and extent(1) columns,
  /// and symmetrically for axis 1.
  std::size_t edge_index(int axis, int i0, int i1 = 0) const;

  double value(int axis, int i0, int i1 = 0) const {
    return comp_[axis][edge_index(axis, i0, i1)];
  }
  double& value(int axis, int i0, int i1 = 0) {
    return comp_[axis][edge_index(axis, i0, i1)];
  }

 private:
  Grid grid_;
  std::vector<double> comp_[2];
};

}  // namespace wtv
