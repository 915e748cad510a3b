#include <cmath>
#include <set>

#include "doctest.h"
#include "wtv/energy.hpp"
#include "wtv/synth.hpp"

using namespace wtv;

TEST_CASE("identical seeds reproduce identical instances") {
  Grid grid = Grid::rect(12, 10, 0.1, 0.1);
  Rng a(7), b(7), c(8);
  ScalarField ua = random_piecewise_constant(grid, 5, a);
  ScalarField ub = random_piecewise_constant(grid, 5, b);
  ScalarField uc = random_piecewise_constant(grid, 5, c);
  CHECK(ua.values() == ub.values());
  CHECK(ua.values() != uc.values());
  CHECK(random_smooth(grid, a).values() == random_smooth(grid, b).values());
}

TEST_CASE("piecewise constant fields are quantized to the 1/64 grid") {
  Rng rng(11);
  Grid grid = Grid::rect(16, 16, 1.0 / 16, 1.0 / 16);
  ScalarField u = random_piecewise_constant(grid, 6, rng);
  std::set<double> distinct;
  for (double v : u.values()) {
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
    double q = v * 64.0;
    CHECK(q == doctest::Approx(std::round(q)).epsilon(1e-12));
    distinct.insert(v);
  }
  CHECK(distinct.size() <= 6);
  CHECK(distinct.size() >= 2);
}

TEST_CASE("smooth fields have grid-resolved increments") {
  Rng rng(12);
  Grid grid = Grid::line(128, 1.0 / 128);
  ScalarField u = random_smooth(grid, rng);
  CHECK(u.sup_norm() <= 1.85);
  double max_inc = 0.0;
  for (int i = 0; i + 1 < 128; ++i)
    max_inc = std::max(max_inc, std::fabs(u(i + 1) - u(i)));
  // A handful of low-frequency modes: no two neighbors differ by much.
  CHECK(max_inc <= 0.35);
  CHECK(max_inc > 0.0);
}

TEST_CASE("staircases are monotone with values in [0, 1]") {
  Rng rng(13);
  for (int trial = 0; trial < 10; ++trial) {
    Grid grid = Grid::line(40, 0.025);
    int steps = rng.uniform_int(2, 6);
    ScalarField u = random_staircase(grid, steps, rng);
    CHECK(u.min() >= 0.0);
    CHECK(u.max() <= 1.0);
    for (int i = 0; i + 1 < 40; ++i) CHECK(u(i + 1) >= u(i) - 1e-15);
    std::set<double> levels(u.values().begin(), u.values().end());
    CHECK(levels.size() >= 2);
    CHECK(levels.size() <= std::size_t(steps));
  }
}

TEST_CASE("positive weights respect their bounds") {
  Rng rng(14);
  auto w = random_positive_weights(200, 0.25, 1.75, rng);
  REQUIRE(w.size() == 200);
  for (double v : w) {
    CHECK(v >= 0.25);
    CHECK(v <= 1.75);
  }
}

TEST_CASE("random elliptic integrands are SPD with bounded weight") {
  Rng rng(15);
  Grid grid = Grid::rect(6, 6, 0.25, 0.25);
  for (int trial = 0; trial < 5; ++trial) {
    FinslerIntegrand phi = random_elliptic(grid, rng);
    // Positive on the axes and symmetric growth: phi(v) > 0 for v != 0.
    for (int i0 = 0; i0 < 6; ++i0)
      for (int i1 = 0; i1 < 6; ++i1) {
        CHECK(phi.phi_cell(i0, i1, {1.0, 0.0}) > 0.0);
        CHECK(phi.phi_cell(i0, i1, {0.0, 1.0}) > 0.0);
        CHECK(phi.phi_cell(i0, i1, {1.0, 1.0}) > 0.0);
        // Eigenvalues in [0.4, 2.5], weight in [0.05, 0.5]: the unit vector
        // response stays inside the corresponding bracket.
        double v = phi.phi_cell(i0, i1, {1.0, 0.0});
        CHECK(v >= 0.05 * std::sqrt(0.4) - 1e-12);
        CHECK(v <= 0.5 * std::sqrt(2.5) + 1e-12);
      }
  }
}

TEST_CASE("random feasible duals stay inside the polar ball") {
  Rng rng(16);
  Grid grid = Grid::rect(8, 8, 0.125, 0.125, Boundary::periodic);
  std::vector<FinslerIntegrand> phis;
  phis.push_back(FinslerIntegrand::isotropic(grid));
  phis.push_back(FinslerIntegrand::weighted_constant(grid, 0.3,
                                                     GradientNorm::manhattan));
  phis.push_back(random_elliptic(grid, rng));
  for (const auto& phi : phis) {
    VectorField z = random_dual_feasible(phi, rng);
    for (int i0 = 0; i0 < 8; ++i0)
      for (int i1 = 0; i1 < 8; ++i1) {
        double z0 = z.value(0, i0, i1);
        double z1 = z.value(1, i0, i1);
        CHECK(phi.polar_cell(i0, i1, {z0, z1}) <= 0.999 + 1e-12);
      }
    // Never trivially zero: feasibility must come from shrinking, not zeroing.
    double mass = 0.0;
    for (double v : z.component(0)) mass += std::fabs(v);
    CHECK(mass > 0.0);
  }
}
