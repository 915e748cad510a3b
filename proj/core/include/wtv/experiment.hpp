#pragma once

#include <string>
#include <vector>

#include "wtv/anisotropy.hpp"
#include "wtv/fidelity.hpp"
#include "wtv/presets.hpp"
#include "wtv/solver2d.hpp"

namespace wtv {

/// Flat key=value experiment description. Every field is settable from a
/// config file line `key = value` and overridable by a --key=value flag; the
/// key is exactly the member name.
struct ExperimentConfig {
  // problem
  std::string model = "weighted";         // weighted | elliptic | isotropic
  std::string gradient_norm = "euclidean";  // euclidean | manhattan
  std::string boundary = "neumann";       // neumann | periodic

  // data: either a named preset, or an input CSV plus weight choice
  std::string preset;
  std::string input_csv;
  double spacing = 0.0;  // 0 means 1/n along each axis
  double origin = 0.0;
  std::string weight = "constant";  // constant | fig2 | fig3 | fig4 | fig5 | smooth
  double lambda = 0.1;              // constant weight value / formula scale
  double a11 = 1.0, a12 = 0.0, a22 = 1.0;  // elliptic matrix
  double q = 2.0;                   // fidelity exponent (2 = quadratic)

  // solver
  double tau = 0.0;
  double sigma = 0.0;
  double theta = 1.0;
  int max_iters = 50000;
  double gap_tol = 1e-6;
  bool accelerate = true;

  // analysis
  double threshold = 0.0;  // jump detector; 0 means the default heuristic
  double gradw_threshold = 0.0;  // weight-gradient detector; 0 skips that set
  int radius = 1;
  double epsilon = 0.1;
  int levels = 9;  // contour levels in SVG output

  // output
  std::string formats = "csv,json,svg";  // comma list: csv,json,svg,pgm
  unsigned long seed = 0;
};

/// Parses `key = value` lines; '#' starts a comment, blank lines are
/// skipped. Throws std::invalid_argument naming the offending key or value.
ExperimentConfig parse_config_file(const std::string& path);
ExperimentConfig parse_config_text(const std::string& text);

/// Applies one override; key is the exact field name. Throws
/// std::invalid_argument for unknown keys or unparseable values.
void apply_override(ExperimentConfig& config, const std::string& key,
                    const std::string& value);

/// True if `fmt` appears in the comma-separated config.formats list.
bool wants_format(const ExperimentConfig& config, const std::string& fmt);

/// Materializes the configured problem. Preset name wins when set; otherwise
/// the datum comes from input_csv and the weight/model fields assemble phi.
Preset build_problem(const ExperimentConfig& config);

/// Solver parameters from the config fields.
SolverParams solver_params(const ExperimentConfig& config);

}  // namespace wtv
