#include "wtv/fidelity.hpp"

#include <cmath>

#include "wtv/util.hpp"

namespace wtv {

FidelityTerm::FidelityTerm(FidelityKind kind, ScalarField g, double q)
    : kind_(kind), g_(std::move(g)), q_(q) {}

FidelityTerm FidelityTerm::quadratic(ScalarField g) {
  return FidelityTerm(FidelityKind::quadratic, std::move(g), 2.0);
}

FidelityTerm FidelityTerm::power(ScalarField g, double q) {
  require(q > 1.0 && std::isfinite(q),
          "FidelityTerm::power: exponent must satisfy q > 1");
  return FidelityTerm(FidelityKind::power_q, std::move(g), q);
}

double FidelityTerm::psi(std::size_t cell, double t) const {
  double r = t - g_.values()[cell];
  if (kind_ == FidelityKind::quadratic) return 0.5 * r * r;
  return std::pow(std::fabs(r), q_) / q_;
}

double FidelityTerm::dpsi(std::size_t cell, double t) const {
  double r = t - g_.values()[cell];
  if (kind_ == FidelityKind::quadratic) return r;
  if (r == 0.0) return 0.0;
  return std::copysign(std::pow(std::fabs(r), q_ - 1.0), r);
}

double FidelityTerm::prox(std::size_t cell, double t, double tau) const {
  require(tau > 0.0, "FidelityTerm::prox: step must be positive");
  double g = g_.values()[cell];
  if (kind_ == FidelityKind::quadratic) return (t + tau * g) / (1.0 + tau);

  // Solve rho + tau rho^{q-1} = |d| for rho = |s - g| >= 0, d = t - g.
  double d = t - g;
  double target = std::fabs(d);
  if (target == 0.0) return g;
  double lo = 0.0, hi = target;  // rho <= |d| since the second term is >= 0
  double rho = std::min(target, std::pow(target / tau, 1.0 / (q_ - 1.0)));
  rho = std::clamp(rho, lo, hi);
  double f = 0.0;
  for (int it = 0; it < 200; ++it) {
    double pw = std::pow(rho, q_ - 1.0);
    f = rho + tau * pw - target;
    if (std::fabs(f) < 1e-12 * (1.0 + target)) break;
    if (f > 0.0)
      hi = rho;
    else
      lo = rho;
    double df = 1.0 + tau * (q_ - 1.0) * (rho > 0.0 ? pw / rho : 0.0);
    double step = rho - f / df;
    rho = (step > lo && step < hi) ? step : 0.5 * (lo + hi);
  }
  if (!(std::fabs(f) < 1e-12 * (1.0 + target)))
    throw std::runtime_error("FidelityTerm::prox: Newton failed to converge");
  return g + std::copysign(rho, d);
}

double FidelityTerm::conjugate(std::size_t cell, double s) const {
  double g = g_.values()[cell];
  if (kind_ == FidelityKind::quadratic) return g * s + 0.5 * s * s;
  double qc = q_ / (q_ - 1.0);
  return g * s + std::pow(std::fabs(s), qc) / qc;
}

}  // namespace wtv
