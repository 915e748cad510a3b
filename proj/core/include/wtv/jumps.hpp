#pragma once

#include <string>
#include <vector>

#include "wtv/field.hpp"

namespace wtv {

/// One detected discontinuity, attached to the forward edge of a cell.
struct JumpRecord {
  int axis = 0;       // axis the edge runs along (jump normal direction)
  int i0 = 0, i1 = 0; // base cell of the edge
  double location = 0.0;  // edge midpoint coordinate along `axis`
  double u_minus = 0.0;   // smaller one-sided 2-cell mean
  double u_plus = 0.0;    // larger one-sided 2-cell mean
  double height = 0.0;    // u_plus - u_minus, always positive
  int sign = 1;  // +1 when the value increases in +axis direction, else -1
};

struct JumpSet {
  Grid grid;
  std::vector<JumpRecord> jumps;  // sorted by (axis, i0, i1), no duplicates
};

/// An edge is a jump when the plain increment exceeds the threshold AND the
/// one-sided means over 2-cell stencils (clamped at Neumann boundaries,
/// wrapping on periodic grids) differ by more than the threshold. The means
/// give u_minus / u_plus.
JumpSet detect_jumps(const ScalarField& u, double threshold);

/// Default detector threshold: 20x the largest consecutive increment of the
/// field. Meant for smooth data where the increment scale reflects the
/// resolution; jumpy data needs a caller-chosen threshold.
double default_jump_threshold(const ScalarField& g);

/// Jump set of the discrete gradient of w: forward difference quotients per
/// axis (the trailing Neumann slot replicates its neighbor), each scanned
/// with detect_jumps, results merged. Edges flagged by several components
/// keep the record with the largest height.
JumpSet weight_gradient_jumps(const ScalarField& w, double threshold);

struct InclusionReport {
  std::size_t total = 0;
  std::size_t matched = 0;
  std::vector<JumpRecord> violations;  // jumps with no allowed jump nearby
  bool ok = true;
};

/// Every jump must have a same-axis jump in one of the allowed sets within
/// `radius` cells (Chebyshev distance on base-cell indices; wrap-aware on
/// periodic grids).
InclusionReport check_jump_inclusion(const JumpSet& observed,
                                     const std::vector<JumpSet>& allowed,
                                     int radius = 1);

struct ContrastPair {
  JumpRecord observed;
  JumpRecord reference;
  double excess = 0.0;  // height_observed - height_reference
};

struct ContrastReport {
  std::vector<ContrastPair> matched;
  std::vector<JumpRecord> unmatched;  // observed jumps with no reference jump
  double max_excess = 0.0;            // over matched pairs
  bool ok = true;  // no unmatched and max_excess <= tol
};

/// Matches each observed jump to the nearest same-axis reference jump within
/// `radius` and verifies the jump height does not grow beyond tol.
ContrastReport check_contrast_decrease(const JumpSet& observed,
                                       const JumpSet& reference, int radius,
                                       double tol);

struct StabilityCheck {
  double lambda = 0.0, mu = 0.0;
  double bound = 0.0;     // 2 |Omega| sup|g| |lambda - mu| / min(lambda, mu)
  double observed = 0.0;  // sup |u_lambda - u_mu|
  double slack = 0.0;     // solver accuracy allowance
  bool pass = false;
};

/// Solves the constant-weight problem at lambda and mu (exact chain solver in
/// 1D, primal-dual in 2D) and checks the sup-norm stability bound. The slack
/// converts the certified energy gaps into a sup-norm allowance through the
/// strong convexity of the fidelity.
StabilityCheck lambda_stability_check(const ScalarField& g, double lambda,
                                      double mu, double gap_tol = 1e-10);

struct EpsilonInclusionCheck {
  bool hypothesis_ok = false;
  bool skipped = false;
  double allowed_diff = 0.0;  // epsilon min(lambda,mu) / (2 |Omega| sup|g|)
  std::size_t checked = 0;    // jumps of u_lambda higher than epsilon
  std::size_t matched = 0;
  std::vector<JumpRecord> violations;
  bool pass = false;
  std::string note;
};

/// For |mu - lambda| small against epsilon (the stability hypothesis), every
/// jump of u_lambda higher than epsilon must persist in u_mu within `radius`.
/// 1D only; solved with the exact chain solver.
EpsilonInclusionCheck epsilon_jump_inclusion_check(const ScalarField& g,
                                                   double lambda, double mu,
                                                   double epsilon,
                                                   double threshold,
                                                   int radius = 1);

}  // namespace wtv
