#include "wtv/jumps.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "wtv/anisotropy.hpp"
#include "wtv/solver1d.hpp"
#include "wtv/solver2d.hpp"
#include "wtv/util.hpp"

namespace wtv {

namespace {

// Mean of u over the one or two cells on one side of the edge, walking in
// `dir` from `start` along `axis`. Clamps at Neumann boundaries.
double side_mean(const ScalarField& u, int axis, int start0, int start1, int dir) {
  const Grid& g = u.grid();
  int n = g.extent(axis);
  double sum = 0.0;
  int cnt = 0;
  int i0 = start0, i1 = start1;
  for (int k = 0; k < 2; ++k) {
    int ia = axis == 0 ? i0 : i1;
    if (g.boundary() == Boundary::periodic) {
      ia = ((ia % n) + n) % n;
    } else if (ia < 0 || ia >= n) {
      break;
    }
    int j0 = axis == 0 ? ia : i0;
    int j1 = axis == 1 ? ia : i1;
    sum += u(j0, j1);
    ++cnt;
    if (axis == 0)
      i0 += dir;
    else
      i1 += dir;
  }
  return sum / double(cnt);
}

int wrap_distance(int a, int b, int n, bool periodic) {
  int d = std::abs(a - b);
  if (periodic) d = std::min(d, n - d);
  return d;
}

int edge_distance(const Grid& g, const JumpRecord& a, const JumpRecord& b) {
  bool periodic = g.boundary() == Boundary::periodic;
  int d0 = wrap_distance(a.i0, b.i0, g.extent(0), periodic);
  if (g.dimension() == 1) return d0;
  int d1 = wrap_distance(a.i1, b.i1, g.extent(1), periodic);
  return std::max(d0, d1);
}

}  // namespace

JumpSet detect_jumps(const ScalarField& u, double threshold) {
  require(threshold > 0.0, "detect_jumps: threshold must be positive");
  const Grid& g = u.grid();
  JumpSet js{g, {}};
  int n0 = g.extent(0), n1 = g.dimension() == 2 ? g.extent(1) : 1;
  for (int axis = 0; axis < g.dimension(); ++axis) {
    int n = g.extent(axis);
    for (int i0 = 0; i0 < n0; ++i0)
      for (int i1 = 0; i1 < n1; ++i1) {
        int ia = axis == 0 ? i0 : i1;
        if (ia >= g.edge_extent(axis)) continue;
        int j0 = axis == 0 ? (i0 + 1) % n : i0;
        int j1 = axis == 1 ? (i1 + 1) % n : i1;
        double inc = u(j0, j1) - u(i0, i1);
        if (std::fabs(inc) <= threshold) continue;
        double lo_mean = side_mean(u, axis, i0, i1, -1);
        double hi_mean = side_mean(u, axis, j0, j1, +1);
        double diff = hi_mean - lo_mean;
        if (std::fabs(diff) <= threshold) continue;
        JumpRecord r;
        r.axis = axis;
        r.i0 = i0;
        r.i1 = i1;
        r.location = g.edge_coord(axis, ia);
        r.sign = diff > 0.0 ? 1 : -1;
        r.u_plus = std::max(lo_mean, hi_mean);
        r.u_minus = std::min(lo_mean, hi_mean);
        r.height = r.u_plus - r.u_minus;
        js.jumps.push_back(r);
      }
  }
  std::sort(js.jumps.begin(), js.jumps.end(), [](const JumpRecord& a, const JumpRecord& b) {
    return std::tie(a.axis, a.i0, a.i1) < std::tie(b.axis, b.i0, b.i1);
  });
  return js;
}

double default_jump_threshold(const ScalarField& g) {
  const Grid& grid = g.grid();
  double inc = 0.0;
  int n0 = grid.extent(0), n1 = grid.dimension() == 2 ? grid.extent(1) : 1;
  for (int axis = 0; axis < grid.dimension(); ++axis) {
    int n = grid.extent(axis);
    for (int i0 = 0; i0 < n0; ++i0)
      for (int i1 = 0; i1 < n1; ++i1) {
        int ia = axis == 0 ? i0 : i1;
        if (ia >= grid.edge_extent(axis)) continue;
        int j0 = axis == 0 ? (i0 + 1) % n : i0;
        int j1 = axis == 1 ? (i1 + 1) % n : i1;
        inc = std::max(inc, std::fabs(g(j0, j1) - g(i0, i1)));
      }
  }
  return 20.0 * std::max(inc, 1e-300);
}

JumpSet weight_gradient_jumps(const ScalarField& w, double threshold) {
  const Grid& g = w.grid();
  std::map<std::tuple<int, int, int>, JumpRecord> merged;
  for (int axis = 0; axis < g.dimension(); ++axis) {
    ScalarField d(g, 0.0);
    int n = g.extent(axis);
    double h = g.spacing(axis);
    int n0 = g.extent(0), n1 = g.dimension() == 2 ? g.extent(1) : 1;
    for (int i0 = 0; i0 < n0; ++i0)
      for (int i1 = 0; i1 < n1; ++i1) {
        int ia = axis == 0 ? i0 : i1;
        if (ia < g.edge_extent(axis)) {
          int j0 = axis == 0 ? (i0 + 1) % n : i0;
          int j1 = axis == 1 ? (i1 + 1) % n : i1;
          d.at(i0, i1) = (w(j0, j1) - w(i0, i1)) / h;
        } else {
          // replicate the last live quotient so the boundary adds no jump
          int j0 = axis == 0 ? i0 - 1 : i0;
          int j1 = axis == 1 ? i1 - 1 : i1;
          d.at(i0, i1) = d(j0, j1);
        }
      }
    JumpSet part = detect_jumps(d, threshold);
    for (const JumpRecord& r : part.jumps) {
      auto key = std::make_tuple(r.axis, r.i0, r.i1);
      auto it = merged.find(key);
      if (it == merged.end() || it->second.height < r.height) merged[key] = r;
    }
  }
  JumpSet js{g, {}};
  js.jumps.reserve(merged.size());
  for (auto& [key, rec] : merged) js.jumps.push_back(rec);
  return js;
}

InclusionReport check_jump_inclusion(const JumpSet& observed,
                                     const std::vector<JumpSet>& allowed,
                                     int radius) {
  require(radius >= 0, "check_jump_inclusion: radius must be >= 0");
  InclusionReport rep;
  rep.total = observed.jumps.size();
  for (const JumpRecord& r : observed.jumps) {
    bool found = false;
    for (const JumpSet& set : allowed) {
      for (const JumpRecord& a : set.jumps) {
        if (a.axis != r.axis) continue;
        if (edge_distance(observed.grid, r, a) <= radius) {
          found = true;
          break;
        }
      }
      if (found) break;
    }
    if (found)
      ++rep.matched;
    else
      rep.violations.push_back(r);
  }
  rep.ok = rep.violations.empty();
  return rep;
}

ContrastReport check_contrast_decrease(const JumpSet& observed,
                                       const JumpSet& reference, int radius,
                                       double tol) {
  ContrastReport rep;
  for (const JumpRecord& r : observed.jumps) {
    const JumpRecord* best = nullptr;
    int best_d = radius + 1;
    for (const JumpRecord& a : reference.jumps) {
      if (a.axis != r.axis) continue;
      int d = edge_distance(observed.grid, r, a);
      if (d < best_d) {
        best_d = d;
        best = &a;
      }
    }
    if (!best) {
      rep.unmatched.push_back(r);
      continue;
    }
    ContrastPair pair{r, *best, r.height - best->height};
    rep.max_excess = std::max(rep.max_excess, pair.excess);
    rep.matched.push_back(pair);
  }
  rep.ok = rep.unmatched.empty() && rep.max_excess <= tol;
  return rep;
}

StabilityCheck lambda_stability_check(const ScalarField& g, double lambda,
                                      double mu, double gap_tol) {
  require(lambda > 0.0 && mu > 0.0,
          "lambda_stability_check: parameters must be positive");
  const Grid& grid = g.grid();
  StabilityCheck out;
  out.lambda = lambda;
  out.mu = mu;
  out.bound = 2.0 * grid.domain_measure() * g.sup_norm() * std::fabs(lambda - mu) /
              std::min(lambda, mu);

  std::vector<double> ul, um;
  if (grid.dimension() == 1) {
    std::vector<double> wl(std::max(0, grid.extent(0) - 1), lambda);
    std::vector<double> wm(wl.size(), mu);
    FidelityTerm psi = FidelityTerm::quadratic(g);
    ul = solve_1d_exact(g, wl, psi).u;
    um = solve_1d_exact(g, wm, psi).u;
    out.slack = 1e-9 * (1.0 + g.sup_norm());
  } else {
    FidelityTerm psi = FidelityTerm::quadratic(g);
    SolverParams params;
    params.gap_tol = gap_tol;
    auto norm = GradientNorm::manhattan;  // cut-metric TV, exact discrete theory
    auto sol_l = solve_pd(FinslerIntegrand::weighted_constant(grid, lambda, norm), psi, params);
    auto sol_m = solve_pd(FinslerIntegrand::weighted_constant(grid, mu, norm), psi, params);
    ul = sol_l.u.values();
    um = sol_m.u.values();
    double m = grid.cell_measure();
    out.slack = std::sqrt(2.0 * std::max(0.0, sol_l.report.gap) / m) +
                std::sqrt(2.0 * std::max(0.0, sol_m.report.gap) / m);
  }
  for (std::size_t k = 0; k < ul.size(); ++k)
    out.observed = std::max(out.observed, std::fabs(ul[k] - um[k]));
  out.pass = out.observed <= out.bound + out.slack;
  return out;
}

EpsilonInclusionCheck epsilon_jump_inclusion_check(const ScalarField& g,
                                                   double lambda, double mu,
                                                   double epsilon,
                                                   double threshold,
                                                   int radius) {
  require(g.grid().dimension() == 1,
          "epsilon_jump_inclusion_check: 1D instances only");
  require(lambda > 0.0 && mu > 0.0 && epsilon > 0.0,
          "epsilon_jump_inclusion_check: parameters must be positive");
  EpsilonInclusionCheck out;
  double sup = g.sup_norm();
  out.allowed_diff =
      epsilon * std::min(lambda, mu) / (2.0 * g.grid().domain_measure() * sup);
  out.hypothesis_ok = std::fabs(lambda - mu) <= out.allowed_diff * (1.0 + 1e-12);
  if (!out.hypothesis_ok) {
    out.skipped = true;
    out.note = "stability hypothesis violated: |lambda - mu| exceeds the allowance";
    return out;
  }

  std::vector<double> w_l(std::max(0, g.grid().extent(0) - 1), lambda);
  std::vector<double> w_m(w_l.size(), mu);
  FidelityTerm psi = FidelityTerm::quadratic(g);
  ScalarField u_l(g.grid(), solve_1d_exact(g, w_l, psi).u);
  ScalarField u_m(g.grid(), solve_1d_exact(g, w_m, psi).u);

  JumpSet jl = detect_jumps(u_l, threshold);
  JumpSet jm = detect_jumps(u_m, threshold);
  JumpSet tall{jl.grid, {}};
  double slack = 1e-8 * (1.0 + sup);  // exact-solver noise on plateau values
  for (const JumpRecord& r : jl.jumps)
    if (r.height > epsilon + slack) tall.jumps.push_back(r);
  out.checked = tall.jumps.size();
  InclusionReport inc = check_jump_inclusion(tall, {jm}, radius);
  out.matched = inc.matched;
  out.violations = inc.violations;
  out.pass = inc.ok;
  if (out.checked == 0) out.note = "no jumps above epsilon; inclusion vacuous";
  return out;
}

}  // namespace wtv
