#pragma once

#include <optional>
#include <vector>

#include "wtv/anisotropy.hpp"
#include "wtv/energy.hpp"
#include "wtv/fidelity.hpp"
#include "wtv/field.hpp"

namespace wtv {

struct SolverParams {
  /// Primal and dual steps. Zero means 1/L with L the gradient norm bound;
  /// whatever is set must satisfy tau * sigma * L^2 <= 1.
  double tau = 0.0;
  double sigma = 0.0;
  /// Overrelaxation; replaced by the per-iteration schedule when the
  /// accelerated variant is active.
  double theta = 1.0;
  int max_iters = 50000;
  /// Convergence: certified gap <= gap_tol * (1 + |primal|).
  double gap_tol = 1e-8;
  /// Strong-convexity acceleration; applies to quadratic fidelity only.
  bool accelerate = true;
  int checkpoint_every = 100;
  std::optional<ScalarField> init;  // defaults to the datum g
};

struct Checkpoint {
  int iter = 0;
  double primal = 0.0;
  double dual = 0.0;
  double gap = 0.0;
};

struct Certificate {
  double primal = 0.0;
  double dual = 0.0;
  double gap = 0.0;
};

struct SolverReport {
  bool converged = false;
  int iters = 0;
  double primal = 0.0;  // best primal value seen (the returned iterate's)
  double dual = 0.0;    // best dual bound seen
  double gap = 0.0;
  EnergyBreakdown energy;  // breakdown at the returned iterate
  std::vector<Checkpoint> history;
};

struct Solution2D {
  ScalarField u;
  VectorField z;
  SolverReport report;
};

/// Upper bound on the operator norm of the forward-difference gradient:
/// sqrt(sum_a 4 / h_a^2), which is sqrt(8)/h on a square 2D grid.
double gradient_norm_bound(const Grid& grid);

/// Per-cell euclidean projection of z onto { phi0(x, .) <= 1 }.
VectorField project_dual(const VectorField& z, const FinslerIntegrand& phi);

/// Duality-gap certificate for a primal/dual pair. The dual field must be
/// feasible (polar <= 1 + 1e-9 everywhere); the dual value is
///   -measure * sum_x Psi*(x, (div z)_x)
/// which lower-bounds the primal energy for any feasible z.
Certificate certify(const ScalarField& u, const VectorField& z,
                    const FinslerIntegrand& phi, const FidelityTerm& psi);

/// Primal-dual hybrid gradient iteration for
///   min_u  anisotropic_tv(u, phi) + measure * sum Psi(x, u_x).
/// Quadratic fidelity activates the strongly convex step schedule. The
/// certificate tracks the best primal iterate and best dual bound seen, so
/// the logged gap is nonincreasing and the returned pair certifies it.
/// Throws on NaN (with the iteration index); reports converged=false when
/// max_iters is exhausted first.
Solution2D solve_pd(const FinslerIntegrand& phi, const FidelityTerm& psi,
                    const SolverParams& params = {});

}  // namespace wtv
