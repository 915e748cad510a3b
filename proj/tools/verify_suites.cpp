#include "verify_suites.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

#include "json.hpp"
#include "wtv/energy.hpp"
#include "wtv/jumps.hpp"
#include "wtv/levelset.hpp"
#include "wtv/presets.hpp"
#include "wtv/solver1d.hpp"
#include "wtv/solver2d.hpp"
#include "wtv/synth.hpp"

namespace wtv::cli {
namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

/// Levels placed between well-separated value clusters of u, so superlevel
/// sets are insensitive to small perturbations of u.
std::vector<double> cluster_midlevels(const ScalarField& u, double min_gap,
                                      std::size_t max_levels) {
  std::vector<double> vals = u.values();
  std::sort(vals.begin(), vals.end());
  std::vector<double> levels;
  for (std::size_t i = 0; i + 1 < vals.size(); ++i)
    if (vals[i + 1] - vals[i] > min_gap)
      levels.push_back(0.5 * (vals[i] + vals[i + 1]));
  if (levels.size() > max_levels) {
    std::vector<double> thin;
    double stride = double(levels.size()) / double(max_levels);
    for (std::size_t k = 0; k < max_levels; ++k)
      thin.push_back(levels[std::size_t(k * stride)]);
    levels = std::move(thin);
  }
  return levels;
}

std::vector<double> edge_weights_of(const FinslerIntegrand& phi) {
  const Grid& grid = phi.grid();
  std::vector<double> w(grid.edge_extent(0));
  for (int i = 0; i < grid.edge_extent(0); ++i) w[i] = phi.edge_weight(0, i);
  return w;
}

ScalarField solve_1d(const Preset& p) {
  return ScalarField(p.grid,
                     solve_1d_exact(p.g, edge_weights_of(p.phi), p.fidelity).u);
}

/// Exhaustive minimal minimizer of the slice energy on a tiny grid: the
/// intersection of every energy-minimizing set (ties within 1e-12).
BinaryField exhaustive_minimal(const Grid& grid, const FinslerIntegrand& phi,
                               const FidelityTerm& psi, double t) {
  std::size_t n = grid.cell_count();
  if (n > 16) throw std::invalid_argument("exhaustive enumeration needs n <= 16");
  double best = std::numeric_limits<double>::infinity();
  std::vector<std::uint32_t> argmins;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    BinaryField e(grid);
    for (std::size_t i = 0; i < n; ++i) e.values()[i] = (mask >> i) & 1u;
    double energy = geometric_energy(e, phi, psi, t);
    if (energy < best - 1e-12) {
      best = energy;
      argmins.assign(1, mask);
    } else if (energy <= best + 1e-12) {
      argmins.push_back(mask);
    }
  }
  std::uint32_t common = ~0u;
  for (std::uint32_t m : argmins) common &= m;
  BinaryField e(grid);
  for (std::size_t i = 0; i < n; ++i) e.values()[i] = (common >> i) & 1u;
  return e;
}

ScalarField staircase_with_min_rise(const Grid& grid, int steps,
                                    double min_rise, Rng& rng) {
  for (int tries = 0; tries < 100; ++tries) {
    ScalarField g = random_staircase(grid, steps, rng);
    std::vector<double> vals = g.values();
    std::sort(vals.begin(), vals.end());
    vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
    double gap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 1 < vals.size(); ++i)
      gap = std::min(gap, vals[i + 1] - vals[i]);
    if (int(vals.size()) == steps && gap >= min_rise) return g;
  }
  // Fall back to evenly spread levels with the same block structure.
  ScalarField g = random_staircase(grid, steps, rng);
  std::vector<double> vals = g.values();
  std::sort(vals.begin(), vals.end());
  vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
  for (auto& v : g.values()) {
    std::size_t rank =
        std::lower_bound(vals.begin(), vals.end(), v) - vals.begin();
    v = double(rank) / double(vals.size() - 1);
  }
  return g;
}

SuiteResult suite_coarea(std::uint64_t seed) {
  SuiteResult r{"coarea"};
  Rng rng(seed * 1000003 + 1);

  double worst = 0.0;
  for (int trial = 0; trial < 30; ++trial) {
    int shape = trial % 3;
    if (shape == 0) {
      Grid grid = Grid::line(rng.uniform_int(8, 40), 0.03,
                             trial % 2 ? Boundary::periodic : Boundary::neumann);
      ScalarField u = random_piecewise_constant(grid, 8, rng);
      auto phi = FinslerIntegrand::weighted_constant(grid,
                                                     rng.uniform(0.2, 2.0));
      worst = std::max(worst,
                       std::abs(coarea_quadrature(u, phi, exact_levels(u)) -
                                anisotropic_tv(u, phi)));
    } else if (shape == 1) {
      Grid grid = Grid::rect(rng.uniform_int(5, 9), rng.uniform_int(5, 9),
                             0.1, 0.12,
                             trial % 2 ? Boundary::periodic : Boundary::neumann);
      ScalarField u = random_piecewise_constant(grid, 8, rng);
      ScalarField w(grid, 0.0);
      for (auto& v : w.values()) v = rng.uniform(0.2, 1.5);
      auto phi = FinslerIntegrand::weighted_field(w, GradientNorm::manhattan);
      worst = std::max(worst,
                       std::abs(coarea_quadrature(u, phi, exact_levels(u)) -
                                anisotropic_tv(u, phi)));
    } else {
      // Binary field: the euclidean assembly is exact there too.
      Grid grid = Grid::rect(8, 8, 0.1, 0.1);
      ScalarField pw = random_piecewise_constant(grid, 4, rng);
      ScalarField u = superlevel(pw, 0.5).to_scalar();
      auto phi = FinslerIntegrand::isotropic(grid);
      worst = std::max(worst,
                       std::abs(coarea_quadrature(u, phi, exact_levels(u)) -
                                anisotropic_tv(u, phi)));
    }
  }
  r.check(worst <= 1e-10,
          "piecewise-constant coarea, worst |quadrature - tv| = " + num(worst));

  {
    Grid grid = Grid::line(1500, 1.0 / 1500);
    ScalarField u = random_smooth(grid, rng);
    auto phi = FinslerIntegrand::weighted_constant(grid, 0.7);
    double tv = anisotropic_tv(u, phi);
    std::vector<double> levels;
    double lo = u.min() - 1e-6, hi = u.max() + 1e-6;
    for (int k = 0; k <= 1000; ++k)
      levels.push_back(lo + (hi - lo) * k / 1000.0);
    double rel = std::abs(coarea_quadrature(u, phi, levels) - tv) / tv;
    r.check(rel <= 5e-3, "smooth 1D coarea, relative error = " + num(rel));
  }
  {
    Grid grid = Grid::rect(32, 32, 1.0 / 32, 1.0 / 32, Boundary::periodic);
    ScalarField u = random_smooth(grid, rng);
    auto phi = FinslerIntegrand::weighted_constant(grid, 1.0,
                                                   GradientNorm::manhattan);
    double tv = anisotropic_tv(u, phi);
    std::vector<double> levels;
    double lo = u.min() - 1e-6, hi = u.max() + 1e-6;
    for (int k = 0; k <= 1000; ++k)
      levels.push_back(lo + (hi - lo) * k / 1000.0);
    double rel = std::abs(coarea_quadrature(u, phi, levels) - tv) / tv;
    r.check(rel <= 5e-3, "smooth 2D coarea, relative error = " + num(rel));
  }
  return r;
}

SuiteResult suite_duality(std::uint64_t seed) {
  SuiteResult r{"duality"};
  Rng rng(seed * 1000003 + 2);

  int violations = 0;
  double worst_margin = -std::numeric_limits<double>::infinity();
  for (int inst = 0; inst < 6; ++inst) {
    Grid grid = inst % 2 ? Grid::line(60, 1.0 / 60)
                         : Grid::rect(10, 12, 0.1, 0.08,
                                      inst % 4 ? Boundary::neumann
                                               : Boundary::periodic);
    FinslerIntegrand phi = FinslerIntegrand::isotropic(grid);
    if (inst % 3 == 1)
      phi = FinslerIntegrand::weighted_constant(
          grid, rng.uniform(0.3, 1.5),
          inst % 2 ? GradientNorm::euclidean : GradientNorm::manhattan);
    if (inst % 3 == 2 && grid.dimension() == 2)
      phi = random_elliptic(grid, rng);
    ScalarField u = inst % 2 ? random_smooth(grid, rng)
                             : random_piecewise_constant(grid, 6, rng);
    double tv = anisotropic_tv(u, phi);
    for (int k = 0; k < 300; ++k) {
      VectorField z = random_dual_feasible(phi, rng);
      double lb = dual_lower_bound(u, z, phi);
      if (lb > tv + 1e-9 * (1.0 + std::abs(tv))) ++violations;
      worst_margin = std::max(worst_margin, lb - tv);
    }
  }
  r.check(violations == 0, "1800 random feasible duals stay below the TV "
                           "(worst lb - tv = " + num(worst_margin) + ")");

  for (const Preset& p : shipped_instances()) {
    SolverParams params = p.solver;
    params.gap_tol = 1e-8;
    params.max_iters = 200000;
    Solution2D sol = solve_pd(p.phi, p.fidelity, params);
    bool ok = sol.report.converged &&
              sol.report.gap <= 1e-8 * (1.0 + std::abs(sol.report.primal));
    r.check(ok, "certificate on " + p.name + ": gap = " + num(sol.report.gap) +
                    " after " + std::to_string(sol.report.iters) + " iters");
  }
  return r;
}

SuiteResult suite_nestedness(std::uint64_t seed) {
  SuiteResult r{"nestedness"};
  Rng rng(seed * 1000003 + 3);

  std::size_t total_violations = 0;
  for (int inst = 0; inst < 6; ++inst) {
    Grid grid = Grid::rect(10, 10, 0.1, 0.1,
                           inst % 2 ? Boundary::periodic : Boundary::neumann);
    ScalarField g = inst % 2 ? random_smooth(grid, rng)
                             : random_piecewise_constant(grid, 6, rng);
    auto phi = FinslerIntegrand::weighted_constant(grid, rng.uniform(0.05, 0.3),
                                                   GradientNorm::manhattan);
    auto psi = FidelityTerm::quadratic(g);
    std::vector<double> levels;
    for (int k = 0; k < 15; ++k)
      levels.push_back(g.min() - 0.3 +
                       (g.max() - g.min() + 0.6) * k / 14.0);
    LevelSetFamily family = mincut_family(phi, psi, levels);
    total_violations += check_nested(family).size();
  }
  r.check(total_violations == 0, "min-cut families over 6 instances: " +
                                     std::to_string(total_violations) +
                                     " nesting violations");

  {
    Grid grid = Grid::line(80, 1.0 / 80);
    ScalarField g = random_piecewise_constant(grid, 8, rng);
    auto phi = FinslerIntegrand::weighted_constant(grid, 0.05);
    ScalarField u(grid,
                  solve_1d_exact(g, edge_weights_of(phi),
                                 FidelityTerm::quadratic(g))
                      .u);
    LevelSetFamily family = superlevel_family(u, exact_levels(u));
    r.check(check_nested(family).empty(),
            "superlevel family of an exact 1D minimizer is nested");
  }
  return r;
}

SuiteResult suite_levelset(std::uint64_t seed) {
  SuiteResult r{"levelset"};
  Rng rng(seed * 1000003 + 4);

  double worst_slack = 0.0;
  bool sets_ok = true;
  for (int inst = 0; inst < 10; ++inst) {
    Grid grid = Grid::rect(8, 8, 0.125, 0.125,
                           inst % 2 ? Boundary::periodic : Boundary::neumann);
    ScalarField g = inst % 2 ? random_smooth(grid, rng)
                             : random_piecewise_constant(grid, 5, rng);
    auto phi = FinslerIntegrand::weighted_constant(grid, rng.uniform(0.05, 0.25),
                                                   GradientNorm::manhattan);
    auto psi = FidelityTerm::quadratic(g);
    SolverParams params;
    params.gap_tol = 1e-12;
    params.max_iters = 200000;
    Solution2D sol = solve_pd(phi, psi, params);
    auto levels = cluster_midlevels(sol.u, 1e-4, 12);
    if (levels.empty()) continue;
    LevelSetReport report =
        verify_levelset_characterization(sol.u, phi, psi, levels);
    worst_slack = std::max(worst_slack, report.max_slack_all);
    sets_ok = sets_ok && report.all_sets_equal;
  }
  r.check(worst_slack <= 1e-5,
          "superlevel vs min-cut energy slack on 8x8, worst = " +
              num(worst_slack));
  r.check(sets_ok, "superlevel sets match minimal minimizers at stable levels");

  bool exact_ok = true;
  for (int inst = 0; inst < 8; ++inst) {
    Grid grid = Grid::rect(4, 4, 0.25, 0.25,
                           inst % 2 ? Boundary::periodic : Boundary::neumann);
    ScalarField g = random_piecewise_constant(grid, 5, rng);
    auto phi = FinslerIntegrand::weighted_constant(grid, rng.uniform(0.05, 0.4),
                                                   GradientNorm::manhattan);
    auto psi = FidelityTerm::quadratic(g);
    for (int k = 0; k < 5; ++k) {
      double t = rng.uniform(g.min() - 0.2, g.max() + 0.2);
      BinaryField cut = mincut_solve(phi, psi, t);
      BinaryField ref = exhaustive_minimal(grid, phi, psi, t);
      if (!(cut == ref)) exact_ok = false;
    }
  }
  r.check(exact_ok, "min-cut equals the exhaustive minimal minimizer on 4x4");
  return r;
}

SuiteResult suite_inclusion(std::uint64_t seed) {
  SuiteResult r{"inclusion"};
  Rng rng(seed * 1000003 + 5);

  {
    Preset p = make_preset("fig2");
    ScalarField u = solve_1d(p);
    double threshold =
        p.jump_threshold > 0 ? p.jump_threshold : default_jump_threshold(p.g);
    JumpSet ju = detect_jumps(u, threshold);
    JumpSet jg = detect_jumps(p.g, threshold);
    JumpSet jw = weight_gradient_jumps(p.weight_cells, p.gradw_threshold);
    InclusionReport inc = check_jump_inclusion(ju, {jg, jw}, 1);
    bool created = false;
    for (const auto& jump : ju.jumps)
      if (std::abs(jump.location - 1.0) <= 1.5 * p.grid.spacing(0))
        created = true;
    r.check(created, "fig2: minimizer jumps at the weight kink x=1 (" +
                         std::to_string(ju.jumps.size()) + " jumps total)");
    r.check(inc.ok, "fig2: all " + std::to_string(inc.total) +
                        " jumps lie in J_g union J_grad_w");
  }

  for (int trial = 0; trial < 3; ++trial) {
    Grid grid = Grid::line(200, 1.0 / 200);
    ScalarField g = staircase_with_min_rise(grid, 5, 0.1, rng);
    auto phi = FinslerIntegrand::weighted(grid, [](double x, double) {
      return 0.002 * (2.0 + std::sin(8.0 * x));
    });
    ScalarField u(grid, solve_1d_exact(g, edge_weights_of(phi),
                                       FidelityTerm::quadratic(g))
                            .u);
    double threshold = 0.04;
    InclusionReport inc = check_jump_inclusion(
        detect_jumps(u, threshold), {detect_jumps(g, threshold)}, 1);
    r.check(inc.ok, "smooth weight on a staircase: " +
                        std::to_string(inc.total) +
                        " jumps, all inside J_g");
  }

  for (int trial = 0; trial < 2; ++trial) {
    Grid grid = Grid::rect(24, 24, 1.0 / 24, 1.0 / 24);
    ScalarField g = random_smooth(grid, rng);
    FinslerIntegrand phi =
        trial == 0 ? FinslerIntegrand::weighted_constant(grid, 0.1)
                   : random_elliptic(grid, rng);
    SolverParams params;
    params.gap_tol = 1e-9;
    params.max_iters = 100000;
    Solution2D sol = solve_pd(phi, FidelityTerm::quadratic(g), params);
    JumpSet ju = detect_jumps(sol.u, default_jump_threshold(g));
    r.check(ju.jumps.empty(),
            std::string(trial == 0 ? "isotropic" : "elliptic") +
                " smooth 2D run creates no jumps (" +
                std::to_string(ju.jumps.size()) + " found)");
  }
  return r;
}

SuiteResult suite_contrast(std::uint64_t seed) {
  SuiteResult r{"contrast"};
  Rng rng(seed * 1000003 + 6);

  for (int trial = 0; trial < 3; ++trial) {
    Grid grid = Grid::line(200, 1.0 / 200);
    ScalarField g = staircase_with_min_rise(grid, 5, 0.1, rng);
    bool constant = trial % 2 == 0;
    FinslerIntegrand phi =
        constant ? FinslerIntegrand::weighted_constant(grid, 0.002)
                 : FinslerIntegrand::weighted(grid, [](double x, double) {
                     return 0.002 * (1.5 + std::sin(5.0 * x));
                   });
    ScalarField u(grid, solve_1d_exact(g, edge_weights_of(phi),
                                       FidelityTerm::quadratic(g))
                            .u);
    double threshold = 0.04;
    ContrastReport report = check_contrast_decrease(
        detect_jumps(u, threshold), detect_jumps(g, threshold), 1, 1e-9);
    r.check(report.ok,
            std::string(constant ? "constant" : "C1") +
                " weight staircase: max contrast excess = " +
                num(report.max_excess) + ", unmatched = " +
                std::to_string(report.unmatched.size()));
  }

  {
    // At 48 cells per axis the two-cell side means reach into bulk cells
    // where the weight flattens the cosine, inflating measured heights by
    // ~9e-3; from 64 cells up the window clears that zone and the excess
    // drops to zero.
    int n = 64;
    double pi = std::numbers::pi;
    Grid grid = Grid::rect(n, n, 2.0 * pi / n, 2.0 * pi / n,
                           Boundary::periodic, -pi, 0.0);
    ScalarField g(grid, 0.0);
    for (int i0 = 0; i0 < n; ++i0)
      for (int i1 = 0; i1 < n; ++i1)
        g.at(i0, i1) =
            grid.coord(0, i0) > 0.0 ? 2.0 + std::cos(grid.coord(1, i1)) : 0.0;
    auto phi = FinslerIntegrand::weighted_constant(grid, 0.3);
    SolverParams params;
    params.gap_tol = 1e-8;
    params.max_iters = 100000;
    Solution2D sol = solve_pd(phi, FidelityTerm::quadratic(g), params);
    double threshold = 0.5;
    ContrastReport report = check_contrast_decrease(
        detect_jumps(sol.u, threshold), detect_jumps(g, threshold), 1, 1e-3);
    r.check(report.ok, "periodic band instance: max contrast excess = " +
                           num(report.max_excess) + ", unmatched = " +
                           std::to_string(report.unmatched.size()));
  }
  return r;
}

SuiteResult suite_lambda(std::uint64_t seed) {
  SuiteResult r{"lambda"};
  Rng rng(seed * 1000003 + 7);

  int passed = 0;
  for (int trial = 0; trial < 8; ++trial) {
    Grid grid = Grid::line(rng.uniform_int(30, 80), 0.02);
    ScalarField g = trial % 2 ? random_smooth(grid, rng)
                              : random_piecewise_constant(grid, 6, rng);
    double lambda = rng.uniform(0.05, 1.0);
    double mu = lambda * rng.uniform(0.5, 1.8);
    if (lambda_stability_check(g, lambda, mu).pass) ++passed;
  }
  r.check(passed == 8, "1D stability bound: " + std::to_string(passed) +
                           "/8 triples pass");

  passed = 0;
  for (int trial = 0; trial < 2; ++trial) {
    Grid grid = Grid::rect(16, 16, 1.0 / 16, 1.0 / 16);
    ScalarField g = random_piecewise_constant(grid, 5, rng);
    double lambda = rng.uniform(0.05, 0.3);
    double mu = lambda * rng.uniform(0.7, 1.4);
    if (lambda_stability_check(g, lambda, mu, 1e-10).pass) ++passed;
  }
  r.check(passed == 2, "2D stability bound: " + std::to_string(passed) +
                           "/2 triples pass");

  {
    Grid grid = Grid::line(60, 1.0 / 60);
    ScalarField g = random_piecewise_constant(grid, 6, rng);
    // The chain functional prices an edge at w |increment|, so the matching
    // TV of g is the plain sum of increments.
    double tv_g = 0.0;
    for (int i = 0; i + 1 < grid.extent(0); ++i)
      tv_g += std::abs(g(i + 1) - g(i));
    bool ok = true;
    double h = grid.spacing(0);
    for (int k = 0; k <= 8; ++k) {
      double lambda = std::pow(2.0, -k);
      std::vector<double> w(grid.extent(0) - 1, lambda);
      auto sol = solve_1d_exact(g, w, FidelityTerm::quadratic(g));
      double half_sq = 0.0;
      for (int i = 0; i < grid.extent(0); ++i)
        half_sq += 0.5 * h * (sol.u[i] - g(i)) * (sol.u[i] - g(i));
      if (half_sq > lambda * tv_g * 1.01 + 1e-15) ok = false;
    }
    r.check(ok, "rate bound half||u-g||^2 <= lambda TV(g) for lambda = 1..2^-8");
  }

  passed = 0;
  int vacuous = 0;
  for (int trial = 0; trial < 4; ++trial) {
    Grid grid = Grid::line(150, 1.0 / 150);
    ScalarField g = staircase_with_min_rise(grid, 5, 0.15, rng);
    double lambda = rng.uniform(0.001, 0.004);
    double eps = 0.08;
    double allowed = eps * lambda / (2.0 * grid.domain_measure() * g.sup_norm());
    double mu = lambda + 0.8 * allowed;
    EpsilonInclusionCheck check =
        epsilon_jump_inclusion_check(g, lambda, mu, eps, 0.05);
    if (check.pass) ++passed;
    if (check.checked == 0) ++vacuous;
  }
  r.check(passed == 4, "epsilon jump persistence: " + std::to_string(passed) +
                           "/4 pass (" + std::to_string(vacuous) + " vacuous)");
  return r;
}

}  // namespace

void SuiteResult::check(bool ok, const std::string& what) {
  pass = pass && ok;
  notes.push_back(std::string(ok ? "[ok]   " : "[FAIL] ") + what);
}

void SuiteResult::note(const std::string& what) {
  notes.push_back("[info] " + what);
}

std::vector<std::string> suite_names() {
  return {"coarea",    "duality",  "nestedness", "levelset",
          "inclusion", "contrast", "lambda"};
}

std::vector<SuiteResult> run_suites(const std::string& name,
                                    std::uint64_t seed) {
  std::vector<SuiteResult> out;
  auto run_one = [&](const std::string& n) {
    if (n == "coarea") return suite_coarea(seed);
    if (n == "duality") return suite_duality(seed);
    if (n == "nestedness") return suite_nestedness(seed);
    if (n == "levelset") return suite_levelset(seed);
    if (n == "inclusion") return suite_inclusion(seed);
    if (n == "contrast") return suite_contrast(seed);
    if (n == "lambda") return suite_lambda(seed);
    throw std::invalid_argument("unknown suite: " + n);
  };
  if (name == "all") {
    for (const auto& n : suite_names()) out.push_back(run_one(n));
  } else {
    out.push_back(run_one(name));
  }
  return out;
}

std::string suites_json(const std::vector<SuiteResult>& results) {
  nlohmann::json suites = nlohmann::json::array();
  bool pass = true;
  for (const auto& r : results) {
    suites.push_back(nlohmann::json{
        {"suite", r.name}, {"pass", r.pass}, {"checks", r.notes}});
    pass = pass && r.pass;
  }
  return nlohmann::json{{"pass", pass}, {"suites", suites}}.dump(2);
}

}  // namespace wtv::cli
