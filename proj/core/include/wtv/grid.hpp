#pragma once

#include <array>
#include <cstddef>

namespace wtv {

enum class Boundary { neumann, periodic };

/// Regular cell-centered grid in one or two dimensions.
///
/// Axis 0 is the slow (row) index, axis 1 the fast (column) index; linear
/// indices are row-major. Cell i along an axis is centered at
/// origin + (i + 1/2) * spacing, so the forward-difference edge between cells
/// i and i+1 has its midpoint at origin + (i + 1) * spacing.
class Grid {
 public:
  static Grid line(int n, double h, Boundary bc = Boundary::neumann,
                   double origin = 0.0);
  static Grid rect(int n0, int n1, double h0, double h1,
                   Boundary bc = Boundary::neumann, double origin0 = 0.0,
                   double origin1 = 0.0);

  int dimension() const { return dim_; }
  int extent(int axis) const { return extent_[axis]; }
  double spacing(int axis) const { return spacing_[axis]; }
  double origin(int axis) const { return origin_[axis]; }
  Boundary boundary() const { return boundary_; }

  std::size_t cell_count() const;
  /// Measure of one cell, the product of the spacings.
  double cell_measure() const;
  /// Total measure of the domain.
  double domain_measure() const { return cell_measure() * double(cell_count()); }

  /// Physical coordinate of cell center i along an axis.
  double coord(int axis, int i) const {
    return origin_[axis] + (double(i) + 0.5) * spacing_[axis];
  }
  /// Midpoint of the forward edge leaving cell i along an axis.
  double edge_coord(int axis, int i) const {
    return origin_[axis] + (double(i) + 1.0) * spacing_[axis];
  }

  std::size_t index(int i0, int i1 = 0) const {
    return std::size_t(i0) * std::size_t(dim_ == 2 ? extent_[1] : 1) + std::size_t(i1);
  }

  /// Number of forward-difference edges along `axis` in that direction:
  /// extent-1 for Neumann (the boundary difference is zero), extent for
  /// periodic (the wrap edge is live).
  int edge_extent(int axis) const {
    return boundary_ == Boundary::periodic ? extent_[axis] : extent_[axis] - 1;
  }
  std::size_t edge_count(int axis) const;

  bool same_layout(const Grid& other) const;

 private:
  Grid() = default;
  int dim_ = 1;
  std::array<int, 2> extent_{1, 1};
  std::array<double, 2> spacing_{1.0, 1.0};
  std::array<double, 2> origin_{0.0, 0.0};
  Boundary boundary_ = Boundary::neumann;
};

}  // namespace wtv
