#include "wtv/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "wtv/util.hpp"

namespace wtv {
namespace {

constexpr double kPi = std::numbers::pi;

double quantized(Rng& rng) { return rng.uniform_int(0, 64) / 64.0; }

}  // namespace

ScalarField random_piecewise_constant(const Grid& grid, int max_values,
                                      Rng& rng) {
  require(max_values >= 2, "need at least two levels");
  ScalarField u(grid, quantized(rng));
  int patches = rng.uniform_int(1, max_values - 1);
  for (int k = 0; k < patches; ++k) {
    double v = quantized(rng);
    if (grid.dimension() == 1) {
      int a = rng.uniform_int(0, grid.extent(0) - 1);
      int b = rng.uniform_int(0, grid.extent(0) - 1);
      if (a > b) std::swap(a, b);
      for (int i = a; i <= b; ++i) u.at(i) = v;
    } else {
      int a0 = rng.uniform_int(0, grid.extent(0) - 1);
      int b0 = rng.uniform_int(0, grid.extent(0) - 1);
      int a1 = rng.uniform_int(0, grid.extent(1) - 1);
      int b1 = rng.uniform_int(0, grid.extent(1) - 1);
      if (a0 > b0) std::swap(a0, b0);
      if (a1 > b1) std::swap(a1, b1);
      for (int i0 = a0; i0 <= b0; ++i0)
        for (int i1 = a1; i1 <= b1; ++i1) u.at(i0, i1) = v;
    }
  }
  return u;
}

ScalarField random_smooth(const Grid& grid, Rng& rng) {
  // Integer frequencies relative to the domain extent keep the sample smooth
  // across periodic seams as well.
  struct Term {
    double a, k0, k1, p0, p1;
  };
  std::vector<Term> terms;
  int count = rng.uniform_int(2, 3);
  for (int t = 0; t < count; ++t)
    terms.push_back({rng.uniform(0.25, 0.6),
                     double(rng.uniform_int(1, 3)),
                     double(rng.uniform_int(1, 3)),
                     rng.uniform(0.0, 2.0 * kPi),
                     rng.uniform(0.0, 2.0 * kPi)});

  ScalarField u(grid, 0.0);
  if (grid.dimension() == 1) {
    double len = grid.extent(0) * grid.spacing(0);
    for (int i = 0; i < grid.extent(0); ++i) {
      double x = grid.coord(0, i) - grid.origin(0);
      double v = 0.0;
      for (const auto& t : terms)
        v += t.a * std::sin(2.0 * kPi * t.k0 * x / len + t.p0);
      u.at(i) = v;
    }
    return u;
  }
  double len0 = grid.extent(0) * grid.spacing(0);
  double len1 = grid.extent(1) * grid.spacing(1);
  for (int i0 = 0; i0 < grid.extent(0); ++i0)
    for (int i1 = 0; i1 < grid.extent(1); ++i1) {
      double x0 = grid.coord(0, i0) - grid.origin(0);
      double x1 = grid.coord(1, i1) - grid.origin(1);
      double v = 0.0;
      for (const auto& t : terms)
        v += t.a * std::sin(2.0 * kPi * t.k0 * x0 / len0 + t.p0) *
             std::cos(2.0 * kPi * t.k1 * x1 / len1 + t.p1);
      u.at(i0, i1) = v;
    }
  return u;
}

ScalarField random_staircase(const Grid& grid, int steps, Rng& rng) {
  require(grid.dimension() == 1, "staircase instances are 1D");
  int n = grid.extent(0);
  require(steps >= 2 && steps <= n, "step count out of range");
  std::vector<double> levels(steps);
  for (auto& v : levels) v = rng.uniform(0.0, 1.0);
  std::sort(levels.begin(), levels.end());

  // Random interior breakpoints split the line into `steps` blocks.
  std::vector<int> cuts{0, n};
  while (int(cuts.size()) < steps + 1) {
    int c = rng.uniform_int(1, n - 1);
    if (std::find(cuts.begin(), cuts.end(), c) == cuts.end())
      cuts.push_back(c);
  }
  std::sort(cuts.begin(), cuts.end());

  ScalarField u(grid, 0.0);
  for (int s = 0; s < steps; ++s)
    for (int i = cuts[s]; i < cuts[s + 1]; ++i) u.at(i) = levels[s];
  return u;
}

std::vector<double> random_positive_weights(int count, double lo, double hi,
                                            Rng& rng) {
  require(count >= 0 && lo > 0.0 && hi >= lo, "bad weight range");
  std::vector<double> w(count);
  for (auto& v : w) v = rng.uniform(lo, hi);
  return w;
}

FinslerIntegrand random_elliptic(const Grid& grid, Rng& rng) {
  double theta = rng.uniform(0.0, kPi);
  double l1 = rng.uniform(0.4, 2.5);
  double l2 = rng.uniform(0.4, 2.5);
  double c = std::cos(theta), s = std::sin(theta);
  double a11 = l1 * c * c + l2 * s * s;
  double a22 = l1 * s * s + l2 * c * c;
  double a12 = (l1 - l2) * c * s;
  double w = rng.uniform(0.05, 0.5);
  return FinslerIntegrand::elliptic(grid, w, {a11, a12, a22});
}

VectorField random_dual_feasible(const FinslerIntegrand& phi, Rng& rng,
                                 double margin) {
  require(margin > 0.0 && margin < 1.0, "margin must sit inside (0, 1)");
  const Grid& grid = phi.grid();
  VectorField z(grid);
  for (int axis = 0; axis < grid.dimension(); ++axis)
    for (auto& v : z.component(axis)) v = rng.uniform(-1.0, 1.0);

  int n0 = grid.extent(0);
  int n1 = grid.dimension() == 2 ? grid.extent(1) : 1;
  for (int i0 = 0; i0 < n0; ++i0)
    for (int i1 = 0; i1 < n1; ++i1) {
      std::array<double, 2> q{0.0, 0.0};
      bool live[2] = {i0 < grid.edge_extent(0),
                      grid.dimension() == 2 && i1 < grid.edge_extent(1)};
      if (grid.dimension() == 1) live[1] = false;
      if (live[0]) q[0] = z.value(0, i0, i1);
      if (live[1]) q[1] = z.value(1, i0, i1);
      double polar = phi.polar_cell(i0, i1, q);
      if (polar > margin) {
        double scale = margin / polar;
        if (live[0]) z.value(0, i0, i1) *= scale;
        if (live[1]) z.value(1, i0, i1) *= scale;
      }
    }
  return z;
}

}  // namespace wtv
