#pragma once

#include <array>
#include <functional>
#include <memory>
#include <optional>

#include "wtv/field.hpp"
#include "wtv/grid.hpp"

namespace wtv {

/// Norm used to assemble the per-cell gradient vector into a scalar.
/// Manhattan makes the discrete perimeter a weighted cut metric (exact
/// coarea, exact min-cut duality); euclidean gives isotropic level lines.
enum class GradientNorm { euclidean, manhattan };

enum class AnisotropyKind { isotropic, weighted, elliptic };

/// Spatially varying convex one-homogeneous integrand phi(x, p).
///
/// Three kinds are supported:
///  - isotropic:  phi(x,p) = |p|
///  - weighted:   phi(x,p) = w(x) |p|            with w positive and bounded
///  - elliptic:   phi(x,p) = w(x) sqrt(p' A(x) p) with A symmetric positive
///                definite (euclidean assembly only)
///
/// Weights are sampled at edge midpoints of the forward-difference stencil so
/// that the discrete perimeter of an axis-aligned step sees exactly the weight
/// at the interface. Closed-form weights are evaluated analytically at those
/// midpoints; weights given as cell fields use the mean of the two adjacent
/// cells. Elliptic data is sampled at cell centers.
class FinslerIntegrand {
 public:
  using WeightFn = std::function<double(double, double)>;

  static FinslerIntegrand isotropic(const Grid& grid,
                                    GradientNorm norm = GradientNorm::euclidean);
  static FinslerIntegrand weighted_constant(const Grid& grid, double w,
                                            GradientNorm norm = GradientNorm::euclidean);
  /// Analytic weight, evaluated at edge midpoints. The callable receives the
  /// physical coordinates (x0, x1); 1D grids pass x1 = 0.
  static FinslerIntegrand weighted(const Grid& grid, const WeightFn& w,
                                   GradientNorm norm = GradientNorm::euclidean);
  /// Cell-sampled weight, averaged onto edges.
  static FinslerIntegrand weighted_field(const ScalarField& w,
                                         GradientNorm norm = GradientNorm::euclidean);
  /// Constant matrix anisotropy. A = {a11, a12, a22} must be SPD.
  static FinslerIntegrand elliptic(const Grid& grid, double w,
                                   std::array<double, 3> A);
  /// Cell-sampled matrix anisotropy.
  static FinslerIntegrand elliptic_fields(const ScalarField& w,
                                          const ScalarField& a11,
                                          const ScalarField& a12,
                                          const ScalarField& a22);

  AnisotropyKind kind() const { return kind_; }
  GradientNorm norm() const { return norm_; }
  const Grid& grid() const { return grid_; }

  /// Growth constant C >= 1 with |p|/C <= phi(x,p) <= C|p| over all samples.
  double growth_constant() const { return growth_; }

  /// Holder exponent of the weight in x; metadata for reporting only.
  double holder_beta() const { return holder_beta_; }
  void set_holder_beta(double beta);

  /// phi at the cell (i0, i1) applied to a gradient vector p. For the
  /// weighted kind with euclidean assembly this uses the mean of the cell's
  /// forward-edge weights; with manhattan assembly each component sees its
  /// own edge weight.
  double phi_cell(int i0, int i1, std::array<double, 2> p) const;

  /// Polar (dual) integrand at a cell: phi0(x,q) = max{ p.q : phi(x,p) <= 1 }.
  double polar_cell(int i0, int i1, std::array<double, 2> q) const;

  /// Euclidean projection of q onto the polar unit ball { z : phi0(x,z) <= 1 }
  /// at the given cell. Closed form for isotropic/weighted; for elliptic the
  /// secular equation is solved to feasibility |phi0 - 1| <= 1e-10 when active.
  std::array<double, 2> project_polar_cell(int i0, int i1,
                                           std::array<double, 2> q) const;

  /// Weight on the forward edge leaving (i0, i1) along `axis`.
  /// Isotropic returns 1. Rejected for the elliptic kind.
  double edge_weight(int axis, int i0, int i1 = 0) const;

  /// Mean of the available forward-edge weights at a cell (euclidean
  /// assembly). Cells with no live forward edge return 1; their gradient is
  /// structurally zero so the value never enters an energy.
  double cell_weight(int i0, int i1 = 0) const;

  /// Elliptic per-cell data (w, a11, a12, a22).
  void cell_matrix(int i0, int i1, double& w, double& a11, double& a12,
                   double& a22) const;

  /// True if the analytic weight callable is available.
  bool has_weight_function() const { return bool(weight_fn_); }
  double weight_at(double x0, double x1 = 0.0) const;

 private:
  FinslerIntegrand(const Grid& grid, AnisotropyKind kind, GradientNorm norm);
  void finalize_weighted();
  void finalize_elliptic();

  Grid grid_;
  AnisotropyKind kind_;
  GradientNorm norm_;
  double growth_ = 1.0;
  double holder_beta_ = 1.0;

  // weighted kind: per-edge samples (comp per axis) and per-cell means
  std::vector<double> edge_w_[2];
  std::vector<double> cell_w_;
  WeightFn weight_fn_;

  // elliptic kind: per-cell samples
  std::vector<double> ell_w_, ell_a11_, ell_a12_, ell_a22_;
};

}  // namespace wtv
