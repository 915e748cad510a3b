#pragma once

#include <string>
#include <vector>

#include "wtv/anisotropy.hpp"
#include "wtv/fidelity.hpp"
#include "wtv/field.hpp"
#include "wtv/solver2d.hpp"

namespace wtv {

/// A ready-to-solve named instance: datum, anisotropy and fidelity plus the
/// analysis parameters that make its structural checks reproducible.
struct Preset {
  std::string name;
  std::string title;
  Grid grid;
  ScalarField g;
  ScalarField weight_cells;  // the weight sampled at cell centers
  FinslerIntegrand phi;
  FidelityTerm fidelity;
  GradientNorm norm = GradientNorm::euclidean;
  double lambda = 0.0;           // constant weight value, or 1 for formulas
  std::string weight_name;       // "constant" or a formula preset name
  double jump_threshold = 0.0;   // 0 means default_jump_threshold(g)
  double gradw_threshold = 0.0;  // threshold for weight-gradient jumps
  SolverParams solver;           // sensible defaults for 2D presets
};

/// Built-in instances: fig1 (1D constant weight), fig2 / fig3 (kinked
/// weights), fig4 / fig5 (Holder weights), fig6-9 (2D periodic band datum).
Preset make_preset(const std::string& name);
std::vector<std::string> preset_names();

/// Closed-form 1D weight formulas by name: fig2, fig3, fig4, fig5, smooth.
double weight_formula(const std::string& name, double x);
std::vector<std::string> weight_formula_names();

/// Small instances with known-good convergence used to exercise solver
/// certificates; every anisotropy kind is represented.
std::vector<Preset> shipped_instances();

}  // namespace wtv
