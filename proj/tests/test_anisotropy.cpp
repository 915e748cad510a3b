#include <array>
#include <cmath>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "wtv/anisotropy.hpp"
#include "wtv/synth.hpp"

using namespace wtv;

namespace {

// Every kind on the same small grid, for property sweeps.
std::vector<FinslerIntegrand> sample_integrands(const Grid& grid, Rng& rng) {
  std::vector<FinslerIntegrand> out;
  out.push_back(FinslerIntegrand::isotropic(grid));
  out.push_back(FinslerIntegrand::isotropic(grid, GradientNorm::manhattan));
  out.push_back(FinslerIntegrand::weighted_constant(grid, 0.3));
  out.push_back(FinslerIntegrand::weighted(
      grid, [](double x0, double x1) { return 0.2 + 0.5 * x0 + 0.1 * x1; },
      GradientNorm::manhattan));
  out.push_back(FinslerIntegrand::weighted(
      grid, [](double x0, double x1) { return 1.0 + x0 * x1; }));
  out.push_back(random_elliptic(grid, rng));
  return out;
}

}  // namespace

TEST_CASE("weighted integrand evaluates w(x)|p|") {
  // w(x) = sqrt(x) + 0.2 gives w(0.25) = 0.7.
  Grid grid = Grid::line(8, 0.25);
  auto phi = FinslerIntegrand::weighted(
      grid, [](double x, double) { return std::sqrt(x) + 0.2; });
  CHECK(phi.weight_at(0.25) == doctest::Approx(0.7));
  auto c = FinslerIntegrand::weighted_constant(grid, 0.7);
  CHECK(c.phi_cell(2, 0, {1.0, 0.0}) == doctest::Approx(0.7));
  CHECK(c.phi_cell(2, 0, {3.0, 4.0}) == doctest::Approx(3.5));
}

TEST_CASE("weight samples live on edge midpoints") {
  Grid grid = Grid::line(4, 0.25);
  auto phi = FinslerIntegrand::weighted(
      grid, [](double x, double) { return 1.0 + x; });
  for (int i = 0; i < grid.edge_extent(0); ++i)
    CHECK(phi.edge_weight(0, i) ==
          doctest::Approx(1.0 + grid.edge_coord(0, i)));
}

TEST_CASE("cell-sampled weights average onto edges") {
  Grid grid = Grid::line(4, 1.0);
  ScalarField w(grid, {1.0, 3.0, 5.0, 9.0});
  auto phi = FinslerIntegrand::weighted_field(w);
  CHECK(phi.edge_weight(0, 0) == doctest::Approx(2.0));
  CHECK(phi.edge_weight(0, 1) == doctest::Approx(4.0));
  CHECK(phi.edge_weight(0, 2) == doctest::Approx(7.0));
}

TEST_CASE("manhattan assembly applies per-edge weights") {
  Grid grid = Grid::rect(3, 3, 0.5, 0.5);
  auto phi = FinslerIntegrand::weighted(
      grid, [](double x0, double x1) { return 1.0 + x0 + 2.0 * x1; },
      GradientNorm::manhattan);
  std::array<double, 2> p{2.0, -3.0};
  double expect = phi.edge_weight(0, 1, 1) * 2.0 + phi.edge_weight(1, 1, 1) * 3.0;
  CHECK(phi.phi_cell(1, 1, p) == doctest::Approx(expect));
}

TEST_CASE("positive homogeneity") {
  Rng rng(11);
  Grid grid = Grid::rect(5, 4, 0.3, 0.4);
  for (const auto& phi : sample_integrands(grid, rng)) {
    for (int trial = 0; trial < 50; ++trial) {
      int i0 = rng.uniform_int(0, 4), i1 = rng.uniform_int(0, 3);
      std::array<double, 2> p{rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)};
      double s = rng.uniform(0.01, 10.0);
      double lhs = phi.phi_cell(i0, i1, {s * p[0], s * p[1]});
      double rhs = s * phi.phi_cell(i0, i1, p);
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
  }
}

TEST_CASE("growth constant brackets phi") {
  Rng rng(12);
  Grid grid = Grid::rect(5, 4, 0.3, 0.4);
  for (const auto& phi : sample_integrands(grid, rng)) {
    double c = phi.growth_constant();
    CHECK(c >= 1.0);
    for (int trial = 0; trial < 50; ++trial) {
      int i0 = rng.uniform_int(0, 4), i1 = rng.uniform_int(0, 3);
      std::array<double, 2> p{rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)};
      double norm = std::hypot(p[0], p[1]);
      double v = phi.phi_cell(i0, i1, p);
      CHECK(v >= norm / c - 1e-12);
      CHECK(v <= c * norm + 1e-12);
    }
  }
}

TEST_CASE("polar pairs with phi through the Fenchel inequality") {
  Rng rng(13);
  Grid grid = Grid::rect(4, 4, 0.5, 0.5);
  for (const auto& phi : sample_integrands(grid, rng)) {
    for (int trial = 0; trial < 60; ++trial) {
      int i0 = rng.uniform_int(0, 3), i1 = rng.uniform_int(0, 3);
      std::array<double, 2> p{rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)};
      std::array<double, 2> q{rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)};
      double pairing = p[0] * q[0] + p[1] * q[1];
      double bound = phi.phi_cell(i0, i1, p) * phi.polar_cell(i0, i1, q);
      CHECK(pairing <= bound + 1e-10);
    }
  }
}

TEST_CASE("polar attains the pairing on a maximizing direction") {
  // For the weighted euclidean case the maximizer is q / (w |q|); sampling
  // many p must then get within 1e-3 of phi0(q) * phi(p) for the best p.
  Grid grid = Grid::line(3, 1.0);
  auto phi = FinslerIntegrand::weighted_constant(grid, 0.4);
  std::array<double, 2> q{0.6, -0.8};
  CHECK(phi.polar_cell(1, 0, q) == doctest::Approx(1.0 / 0.4));
  // Manhattan assembly dualizes componentwise to a weighted max norm.
  auto phim = FinslerIntegrand::weighted_constant(grid, 0.5,
                                                  GradientNorm::manhattan);
  CHECK(phim.polar_cell(1, 0, {0.3, 0.0}) == doctest::Approx(0.6));
}

TEST_CASE("elliptic polar inverts the matrix form") {
  Grid grid = Grid::rect(2, 2, 1.0, 1.0);
  // A = diag(4, 1), w = 0.5: phi = 0.5 sqrt(4 p0^2 + p1^2),
  // phi0(q) = 2 sqrt(q0^2 / 4 + q1^2).
  auto phi = FinslerIntegrand::elliptic(grid, 0.5, {4.0, 0.0, 1.0});
  CHECK(phi.phi_cell(0, 0, {1.0, 0.0}) == doctest::Approx(1.0));
  CHECK(phi.phi_cell(0, 0, {0.0, 1.0}) == doctest::Approx(0.5));
  CHECK(phi.polar_cell(0, 0, {1.0, 0.0}) == doctest::Approx(1.0));
  CHECK(phi.polar_cell(0, 0, {0.0, 1.0}) == doctest::Approx(2.0));
  CHECK_THROWS_AS(phi.edge_weight(0, 0), std::invalid_argument);
}

TEST_CASE("elliptic construction rejects non-SPD matrices") {
  Grid grid = Grid::rect(2, 2, 1.0, 1.0);
  CHECK_THROWS_AS(FinslerIntegrand::elliptic(grid, 1.0, {1.0, 2.0, 1.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(FinslerIntegrand::elliptic(grid, -1.0, {1.0, 0.0, 1.0}),
                  std::invalid_argument);
}

TEST_CASE("projection lands on the polar ball and is firm") {
  Rng rng(14);
  Grid grid = Grid::rect(4, 4, 0.5, 0.5);
  for (const auto& phi : sample_integrands(grid, rng)) {
    for (int trial = 0; trial < 40; ++trial) {
      int i0 = rng.uniform_int(0, 3), i1 = rng.uniform_int(0, 3);
      std::array<double, 2> q{rng.uniform(-4.0, 4.0), rng.uniform(-4.0, 4.0)};
      auto z = phi.project_polar_cell(i0, i1, q);
      CHECK(phi.polar_cell(i0, i1, z) <= 1.0 + 1e-9);
      // Idempotence: projecting a feasible point changes nothing.
      auto z2 = phi.project_polar_cell(i0, i1, z);
      CHECK(z2[0] == doctest::Approx(z[0]).epsilon(1e-9));
      CHECK(z2[1] == doctest::Approx(z[1]).epsilon(1e-9));
      // Variational inequality <q - Pq, y - Pq> <= 0 for feasible y.
      for (int k = 0; k < 8; ++k) {
        std::array<double, 2> y{rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0)};
        double py = phi.polar_cell(i0, i1, y);
        if (py > 1.0) {
          y[0] /= py;
          y[1] /= py;
        }
        double ip = (q[0] - z[0]) * (y[0] - z[0]) + (q[1] - z[1]) * (y[1] - z[1]);
        CHECK(ip <= 1e-8);
      }
    }
  }
}

TEST_CASE("weight positivity is enforced") {
  Grid grid = Grid::line(4, 0.25);
  CHECK_THROWS_AS(FinslerIntegrand::weighted_constant(grid, 0.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(FinslerIntegrand::weighted(
                      grid, [](double x, double) { return x - 0.4; }),
                  std::invalid_argument);
}
