#pragma once

#include <vector>

#include "wtv/anisotropy.hpp"
#include "wtv/energy.hpp"
#include "wtv/fidelity.hpp"
#include "wtv/field.hpp"

namespace wtv {

/// Strict superlevel set { u > t }.
BinaryField superlevel(const ScalarField& u, double t);

/// Perimeter of a cell set under phi: the anisotropic TV of its indicator.
double weighted_perimeter(const BinaryField& e, const FinslerIntegrand& phi);

/// Energy of the binary slice problem at level t:
///   P_phi(E) + measure * sum_{x in E} dPsi(x, t).
double geometric_energy(const BinaryField& e, const FinslerIntegrand& phi,
                        const FidelityTerm& psi, double t);

/// Global minimizer of the slice energy at level t via a max-flow min-cut on
/// the 4-connected grid graph. When minimizers are not unique, returns the
/// minimal one (intersection of all minimizers). Requires a scalar-weight
/// integrand whose discrete perimeter is a cut metric: manhattan assembly in
/// 2D, anything in 1D (the norms coincide there). Limited to grids of at most
/// 512x512 cells.
BinaryField mincut_solve(const FinslerIntegrand& phi, const FidelityTerm& psi,
                         double t);

struct LevelSetFamily {
  std::vector<double> levels;
  std::vector<BinaryField> sets;

  /// Layer-cake reconstruction: v(x) = max{ t in levels : x in E_t }, clamped
  /// to levels.front() where x lies in no set.
  ScalarField reconstruct() const;
};

/// Superlevel sets of u at each level.
LevelSetFamily superlevel_family(const ScalarField& u,
                                 const std::vector<double>& levels);

/// Minimal slice minimizers at each level.
LevelSetFamily mincut_family(const FinslerIntegrand& phi, const FidelityTerm& psi,
                             const std::vector<double>& levels);

struct LevelCheck {
  double level = 0.0;
  double energy_superlevel = 0.0;
  double energy_mincut = 0.0;
  double slack = 0.0;  // energy_superlevel - energy_mincut, >= 0 up to rounding
  bool sets_equal = false;
  bool tie_prone = false;  // level within 1e-4 of a value attained by u
};

struct LevelSetReport {
  std::vector<LevelCheck> checks;
  double max_slack = 0.0;       // over non-tie-prone levels
  double max_slack_all = 0.0;   // over every level
  bool all_sets_equal = true;   // over non-tie-prone levels
};

/// Compares each superlevel set of u against the min-cut minimizer of the
/// slice problem at the same level.
LevelSetReport verify_levelset_characterization(const ScalarField& u,
                                                const FinslerIntegrand& phi,
                                                const FidelityTerm& psi,
                                                const std::vector<double>& levels);

struct NestingViolation {
  std::size_t lower_index = 0;  // index of the smaller level
  std::size_t upper_index = 0;
  std::size_t cells = 0;  // cells of E_upper outside E_lower
};

/// Checks that sets shrink as the level grows: for t < t', E_{t'} must be
/// contained in E_t. Only consecutive pairs need checking; inclusion is
/// transitive.
std::vector<NestingViolation> check_nested(const LevelSetFamily& family);

}  // namespace wtv
