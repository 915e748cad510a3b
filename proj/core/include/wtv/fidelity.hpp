#pragma once

#include "wtv/field.hpp"

namespace wtv {

enum class FidelityKind { quadratic, power_q };

/// Pointwise data term Psi(x, t) attached to a datum g:
///  - quadratic: Psi = (t - g)^2 / 2
///  - power_q:   Psi = |t - g|^q / q  with exponent q > 1
/// Both are strictly convex in t with superlinear growth, so minimizers are
/// unique and every slice problem below is well posed.
class FidelityTerm {
 public:
  static FidelityTerm quadratic(ScalarField g);
  static FidelityTerm power(ScalarField g, double q);

  FidelityKind kind() const { return kind_; }
  double exponent() const { return q_; }
  const ScalarField& datum() const { return g_; }
  const Grid& grid() const { return g_.grid(); }

  double psi(std::size_t cell, double t) const;
  /// dPsi/dt. Continuous for both kinds since q > 1.
  double dpsi(std::size_t cell, double t) const;
  /// argmin_s Psi(x,s) + (s - t)^2 / (2 tau). Closed form for quadratic; a
  /// safeguarded Newton iteration (residual < 1e-12) for power_q.
  double prox(std::size_t cell, double t, double tau) const;
  /// Convex conjugate Psi*(x,s) = g s + |s|^{q'} / q', 1/q + 1/q' = 1.
  double conjugate(std::size_t cell, double s) const;

  /// Modulus of strong convexity in t (1 for quadratic, 0 otherwise).
  double strong_convexity() const {
    return kind_ == FidelityKind::quadratic ? 1.0 : 0.0;
  }

 private:
  FidelityTerm(FidelityKind kind, ScalarField g, double q);
  FidelityKind kind_;
  ScalarField g_;
  double q_;
};

}  // namespace wtv
