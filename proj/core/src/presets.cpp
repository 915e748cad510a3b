#include "wtv/presets.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "wtv/util.hpp"

namespace wtv {
namespace {

constexpr double kPi = std::numbers::pi;

ScalarField sample_1d(const Grid& grid,
                      const std::function<double(double)>& f) {
  std::vector<double> values(grid.cell_count());
  for (int i = 0; i < grid.extent(0); ++i) values[i] = f(grid.coord(0, i));
  return ScalarField(grid, std::move(values));
}

ScalarField sample_2d(const Grid& grid,
                      const std::function<double(double, double)>& f) {
  std::vector<double> values(grid.cell_count());
  for (int i0 = 0; i0 < grid.extent(0); ++i0)
    for (int i1 = 0; i1 < grid.extent(1); ++i1)
      values[grid.index(i0, i1)] = f(grid.coord(0, i0), grid.coord(1, i1));
  return ScalarField(grid, std::move(values));
}

ScalarField constant_field(const Grid& grid, double v) {
  return ScalarField(grid, v);
}

Preset weighted_1d(const std::string& name, const std::string& title,
                   const Grid& grid, const std::function<double(double)>& g,
                   const std::string& weight_name, double holder_beta) {
  ScalarField datum = sample_1d(grid, g);
  // Cell-center samples feed the weight-gradient analysis only. A formula
  // may be singular at an isolated point (fig5 at x = 0); sampling a quarter
  // cell off keeps that diagnostic field finite.
  double quarter = 0.25 * grid.spacing(0);
  auto safe_weight = [&, quarter](double x) {
    double w = weight_formula(weight_name, x);
    return std::isfinite(w) ? w : weight_formula(weight_name, x + quarter);
  };
  Preset p{name,
           title,
           grid,
           datum,
           sample_1d(grid, safe_weight),
           FinslerIntegrand::weighted(grid,
                                      [wn = weight_name](double x, double) {
                                        return weight_formula(wn, x);
                                      }),
           FidelityTerm::quadratic(datum)};
  p.phi.set_holder_beta(holder_beta);
  p.lambda = 1.0;
  p.weight_name = weight_name;
  return p;
}

double fig1_datum(double x) {
  // Piecewise-smooth signal with interior extrema and two genuine jumps.
  double v = 0.8 * std::sin(4.0 * kPi * x);
  if (x > 0.55 && x <= 0.8) v += 1.5;
  return v;
}

// A single monotone arc steep at x = 1. On the stretch where the minimizer
// ascends with the dual saturated, u - g equals dw/dx, so the derivative kink
// of the fig2 weight turns into a genuine jump of u (and the downward kink of
// the fig3 weight into a flat zone). The amplitude keeps following g cheaper
// than collapsing to the mean under weights of order one.
double fig2_datum(double x) { return 8.0 * std::sin(0.5 * kPi * (x - 1.0)); }

double fig45_datum(double x) { return 12.0 * std::sin(kPi * x); }

}  // namespace

double weight_formula(const std::string& name, double x) {
  if (name == "fig2") return (x <= 1.0 ? std::sqrt(std::max(x, 0.0)) : x) + 0.2;
  if (name == "fig3") return (x <= 1.0 ? x * x : x) + 0.2;
  if (name == "fig4") return std::pow(std::abs(x), 0.1);
  if (name == "fig5") return std::pow(std::abs(x), -0.1);
  if (name == "smooth") return 2.0 + std::sin(x);
  throw std::invalid_argument("unknown weight formula: " + name);
}

std::vector<std::string> weight_formula_names() {
  return {"fig2", "fig3", "fig4", "fig5", "smooth"};
}

std::vector<std::string> preset_names() {
  return {"fig1", "fig2", "fig3", "fig4", "fig5", "fig6-9"};
}

Preset make_preset(const std::string& name) {
  if (name == "fig1") {
    Grid grid = Grid::line(1000, 1.0 / 1000, Boundary::neumann, 0.0);
    ScalarField g = sample_1d(grid, fig1_datum);
    double lambda = 0.005;
    Preset p{name,
             "1D denoising, constant weight",
             grid,
             g,
             constant_field(grid, lambda),
             FinslerIntegrand::weighted_constant(grid, lambda),
             FidelityTerm::quadratic(g)};
    p.lambda = lambda;
    p.weight_name = "constant";
    // The datum itself has jumps of height 1.5, so the increment heuristic
    // does not apply; 0.3 separates them from smooth increments of ~0.01.
    p.jump_threshold = 0.3;
    return p;
  }
  if (name == "fig2") {
    Grid grid = Grid::line(1000, 2.0 / 1000, Boundary::neumann, 0.0);
    Preset p = weighted_1d(name, "Jump creation at the weight kink", grid,
                           fig2_datum, "fig2", 1.0);
    // The created jump is dw/dx(1+) - dw/dx(1-) = 0.5; smooth increments of
    // u stay under 0.03.
    p.jump_threshold = 0.25;
    p.gradw_threshold = 0.2;
    return p;
  }
  if (name == "fig3") {
    Grid grid = Grid::line(1000, 2.0 / 1000, Boundary::neumann, 0.0);
    Preset p = weighted_1d(name, "Flat zone at the weight kink", grid,
                           fig2_datum, "fig3", 1.0);
    p.jump_threshold = 0.25;
    p.gradw_threshold = 0.2;
    return p;
  }
  if (name == "fig4" || name == "fig5") {
    // 1001 cells so no edge midpoint lands on x = 0, where one formula
    // vanishes and the other diverges.
    Grid grid = Grid::line(1001, 2.0 / 1001, Boundary::neumann, -1.0);
    Preset p = weighted_1d(
        name,
        name == "fig4" ? "Holder weight |x|^(1/10)" : "Holder weight |x|^(-1/10)",
        grid, fig45_datum, name, 0.1);
    return p;
  }
  if (name == "fig6-9") {
    int n = 256;
    Grid grid = Grid::rect(n, n, 2.0 * kPi / n, 2.0 * kPi / n,
                           Boundary::periodic, -kPi, 0.0);
    ScalarField g = sample_2d(
        grid, [](double y, double x) { return y > 0.0 ? 2.0 + std::cos(x) : 0.0; });
    double lambda = 0.4;
    Preset p{name,
             "Periodic band datum (2+cos x for y>0)",
             grid,
             g,
             constant_field(grid, lambda),
             FinslerIntegrand::weighted_constant(grid, lambda,
                                                 GradientNorm::euclidean),
             FidelityTerm::quadratic(g)};
    p.lambda = lambda;
    p.weight_name = "constant";
    // The datum jumps by 1..3 across y = 0 while smooth increments stay
    // under 0.025, so the increment heuristic (20x max step of g) is useless
    // here; 0.5 cleanly separates the two populations.
    p.jump_threshold = 0.5;
    p.solver.gap_tol = 1e-6;
    p.solver.max_iters = 80000;
    return p;
  }
  throw std::invalid_argument("unknown preset: " + name);
}

std::vector<Preset> shipped_instances() {
  std::vector<Preset> out;

  {
    int n = 24;
    Grid grid = Grid::rect(n, n, 1.0 / n, 1.0 / n, Boundary::neumann);
    ScalarField g = sample_2d(grid, [](double y, double x) {
      double v = std::sin(2.0 * kPi * x) * std::cos(2.0 * kPi * y);
      if ((x - 0.5) * (x - 0.5) + (y - 0.5) * (y - 0.5) < 0.07) v += 1.0;
      return v;
    });
    Preset p{"disc-iso", "isotropic disc instance", grid, g,
             constant_field(grid, 0.1),
             FinslerIntegrand::weighted_constant(grid, 0.1),
             FidelityTerm::quadratic(g)};
    p.lambda = 0.1;
    p.weight_name = "constant";
    out.push_back(std::move(p));
  }
  {
    int n = 24;
    Grid grid = Grid::rect(n, n, 1.0 / n, 1.0 / n, Boundary::neumann);
    ScalarField g = sample_2d(grid, [](double y, double x) {
      return (x > 0.5 ? 1.0 : 0.0) + 0.3 * std::sin(2.0 * kPi * y);
    });
    Preset p{"step-weighted", "spatially weighted step instance", grid, g,
             sample_2d(grid, [](double y, double) { return 0.05 + 0.1 * y * y; }),
             FinslerIntegrand::weighted(
                 grid, [](double y, double) { return 0.05 + 0.1 * y * y; }),
             FidelityTerm::quadratic(g)};
    p.lambda = 1.0;
    p.weight_name = "analytic";
    out.push_back(std::move(p));
  }
  {
    int n = 20;
    Grid grid = Grid::rect(n, n, 1.0 / n, 1.0 / n, Boundary::periodic);
    ScalarField g = sample_2d(grid, [](double y, double x) {
      return std::sin(2.0 * kPi * x) + (y > 0.5 ? 0.8 : 0.0);
    });
    Preset p{"band-elliptic", "elliptic periodic instance", grid, g,
             constant_field(grid, 0.08),
             FinslerIntegrand::elliptic(grid, 0.08, {2.0, 0.4, 1.0}),
             FidelityTerm::quadratic(g)};
    p.lambda = 0.08;
    p.weight_name = "elliptic";
    out.push_back(std::move(p));
  }
  {
    int n = 16;
    Grid grid = Grid::rect(n, n, 1.0 / n, 1.0 / n, Boundary::neumann);
    ScalarField g = sample_2d(grid, [](double y, double x) {
      return x < 0.4 ? 1.0 : (y < 0.6 ? 0.2 : 0.7);
    });
    Preset p{"blocks-manhattan", "manhattan blocks instance", grid, g,
             constant_field(grid, 0.06),
             FinslerIntegrand::weighted_constant(grid, 0.06,
                                                 GradientNorm::manhattan),
             FidelityTerm::quadratic(g)};
    p.norm = GradientNorm::manhattan;
    p.lambda = 0.06;
    p.weight_name = "constant";
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace wtv
