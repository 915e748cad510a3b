#pragma once

#include <utility>
#include <vector>

#include "wtv/fidelity.hpp"
#include "wtv/field.hpp"

namespace wtv {

/// Convex piecewise-quadratic function of one variable, stored as pieces
/// a t^2 + b t + c over intervals whose left endpoints are kept sorted
/// (the first piece extends to -infinity). Built by summing quadratics and
/// clipping the derivative, which keeps the function C^1 and convex.
class PiecewiseQuadratic {
 public:
  /// The quadratic a t^2 + b t + c everywhere; a >= 0.
  PiecewiseQuadratic(double a, double b, double c);

  double eval(double t) const;
  double deriv(double t) const;
  /// Unique minimizer; if the derivative vanishes on an interval the smallest
  /// point is returned.
  double argmin() const;

  void add_quadratic(double a, double b, double c);
  /// Replace the function by its infimal convolution with w|.|, i.e. clamp
  /// the derivative to [-w, w]. Returns the clamp thresholds (t_lo, t_hi)
  /// where the derivative reaches -w and +w. Requires strict convexity.
  std::pair<double, double> clip_slope(double w);

  std::size_t piece_count() const { return pieces_.size(); }
  /// Left endpoint of piece j (piece 0 reports -infinity) and coefficients.
  void piece(std::size_t j, double& lo, double& a, double& b, double& c) const;

 private:
  struct Piece {
    double lo;  // left endpoint; -inf for the first piece
    double a, b, c;
  };
  std::vector<Piece> pieces_;
  std::size_t locate(double t) const;
  void prune();
};

struct Solution1D {
  std::vector<double> u;
  double energy = 0.0;
};

/// Exact minimizer of
///   sum_i w_i |u_{i+1} - u_i|  +  h * sum_i Psi(x_i, u_i)
/// by forward message passing of clipped value functions and backward
/// recovery. Quadratic fidelity runs on closed-form piecewise-quadratic
/// messages; other strictly convex fidelities use the same recursion with
/// derivative evaluation and safeguarded bisection (tolerance 1e-12 relative
/// to the data range). Requires a 1D grid and positive edge weights; the grid
/// must be Neumann (the chain recursion has no wrap-around form).
Solution1D solve_1d_exact(const ScalarField& g, const std::vector<double>& w_edges,
                          const FidelityTerm& psi);

/// Exhaustive minimization over value_grid^n; the independent oracle for
/// solve_1d_exact. Enforces n <= 6 and |value_grid| <= 64. Ties resolve to
/// the lexicographically smallest configuration.
Solution1D brute_force_1d(const ScalarField& g, const std::vector<double>& w_edges,
                          const FidelityTerm& psi,
                          const std::vector<double>& value_grid);

struct FlatZone {
  int begin = 0;   // first cell of the zone
  int end = 0;     // last cell, inclusive
  double level = 0.0;
  double extent = 0.0;  // physical length, (end - begin + 1) * h
};

/// Maximal runs of at least two cells whose consecutive increments stay
/// within tol.
std::vector<FlatZone> flat_zone_report(const ScalarField& u, double tol);

}  // namespace wtv
