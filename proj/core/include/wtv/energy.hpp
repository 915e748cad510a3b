#pragma once

#include <vector>

#include "wtv/anisotropy.hpp"
#include "wtv/fidelity.hpp"
#include "wtv/field.hpp"

namespace wtv {

struct EnergyBreakdown {
  double tv = 0.0;
  double fidelity = 0.0;
  double total = 0.0;
};

/// Discrete total variation: sum over cells of measure * phi(cell, grad u)
/// with the forward-difference gradient (zero across Neumann boundaries,
/// wrapping for periodic ones). Accumulated by pairwise summation so results
/// are reproducible to the last bit.
double anisotropic_tv(const ScalarField& u, const FinslerIntegrand& phi);

EnergyBreakdown total_energy(const ScalarField& u, const FinslerIntegrand& phi,
                             const FidelityTerm& psi);

/// Forward-difference gradient of u as a per-edge vector field.
VectorField gradient(const ScalarField& u);

/// In-place variant for solver inner loops; `out` must share u's grid layout.
void gradient(const ScalarField& u, VectorField& out);

/// Discrete divergence, the negative adjoint of `gradient` under the plain
/// euclidean pairings, so <grad u, z> = -<u, div z> holds at machine
/// precision.
ScalarField divergence(const VectorField& z);

/// In-place variant for solver inner loops; `out` must share z's grid layout.
void divergence(const VectorField& z, ScalarField& out);

/// measure * <u, div z> for a dual field z feasible for phi (polar <= 1 up to
/// 1e-9 at every cell; rejected otherwise with the worst offender's location).
/// Always a lower bound for anisotropic_tv(u, phi).
double dual_lower_bound(const ScalarField& u, const VectorField& z,
                        const FinslerIntegrand& phi);

/// Midpoint-rule quadrature of t -> perimeter of {u > t} over the level list:
/// sum over consecutive pairs of P({u > midpoint}) * (t_{k+1} - t_k).
/// Levels must be strictly increasing and bracket the range of u.
double coarea_quadrature(const ScalarField& u, const FinslerIntegrand& phi,
                         const std::vector<double>& levels);

/// Level list that makes the quadrature exact for piecewise-constant u: the
/// sorted distinct values of u padded by one sentinel below and above.
std::vector<double> exact_levels(const ScalarField& u);

}  // namespace wtv
