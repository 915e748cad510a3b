#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "wtv/energy.hpp"
#include "wtv/solver1d.hpp"
#include "wtv/synth.hpp"

using namespace wtv;

namespace {

double chain_energy(const ScalarField& g, const std::vector<double>& w,
                    const FidelityTerm& psi, const std::vector<double>& u) {
  double e = 0.0;
  for (std::size_t i = 0; i + 1 < u.size(); ++i)
    e += w[i] * std::fabs(u[i + 1] - u[i]);
  double h = g.grid().cell_measure();
  for (std::size_t i = 0; i < u.size(); ++i) e += h * psi.psi(i, u[i]);
  return e;
}

}  // namespace

TEST_CASE("piecewise quadratic bookkeeping") {
  PiecewiseQuadratic f(1.0, -2.0, 0.0);  // t^2 - 2t, argmin 1
  CHECK(f.eval(0.0) == doctest::Approx(0.0));
  CHECK(f.eval(3.0) == doctest::Approx(3.0));
  CHECK(f.deriv(2.0) == doctest::Approx(2.0));
  CHECK(f.argmin() == doctest::Approx(1.0));

  f.add_quadratic(1.0, 0.0, 1.0);  // + t^2 + 1 -> 2t^2 - 2t + 1, argmin 0.5
  CHECK(f.argmin() == doctest::Approx(0.5));
  CHECK(f.eval(0.5) == doctest::Approx(0.5));

  auto [lo, hi] = f.clip_slope(1.0);  // deriv 4t - 2 hits -1 at 0.25, +1 at 0.75
  CHECK(lo == doctest::Approx(0.25));
  CHECK(hi == doctest::Approx(0.75));
  CHECK(f.deriv(0.0) == doctest::Approx(-1.0));
  CHECK(f.deriv(1.0) == doctest::Approx(1.0));
  CHECK(f.deriv(0.5) == doctest::Approx(0.0));
  CHECK(f.piece_count() == 3);
}

TEST_CASE("piecewise quadratic stays convex through random assembly") {
  Rng rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    PiecewiseQuadratic f(rng.uniform(0.1, 2.0), rng.uniform(-1.0, 1.0), 0.0);
    for (int step = 0; step < 6; ++step) {
      f.add_quadratic(rng.uniform(0.05, 1.0), rng.uniform(-2.0, 2.0),
                      rng.uniform(-1.0, 1.0));
      f.clip_slope(rng.uniform(0.1, 3.0));
    }
    // Derivative sampled on a grid must be nondecreasing and eval must be
    // consistent with the integrated derivative.
    double prev = -1e100;
    for (double t = -4.0; t <= 4.0; t += 0.05) {
      double d = f.deriv(t);
      CHECK(d >= prev - 1e-10);
      prev = d;
    }
    double a = f.eval(-1.3), b = f.eval(2.7);
    double quad = 0.0;
    int n = 4000;
    for (int k = 0; k < n; ++k) {
      double t = -1.3 + (2.7 + 1.3) * (double(k) + 0.5) / n;
      quad += f.deriv(t) * (2.7 + 1.3) / n;
    }
    CHECK(b - a == doctest::Approx(quad).epsilon(1e-4));
  }
}

TEST_CASE("exact chain solver matches brute force on tiny instances") {
  Rng rng(32);
  std::vector<double> value_grid;
  for (int k = 0; k <= 20; ++k) value_grid.push_back(double(k) / 20.0);
  for (int trial = 0; trial < 12; ++trial) {
    int n = rng.uniform_int(2, 5);
    Grid grid = Grid::line(n, 1.0 / n);
    std::vector<double> gv(n);
    for (auto& v : gv) v = value_grid[std::size_t(rng.uniform_int(0, 20))];
    ScalarField g(grid, gv);
    auto w = random_positive_weights(n - 1, 0.01, 0.3, rng);
    auto psi = FidelityTerm::quadratic(g);

    Solution1D exact = solve_1d_exact(g, w, psi);
    Solution1D brute = brute_force_1d(g, w, psi, value_grid);
    CHECK(exact.energy <= brute.energy + 1e-12);
    // Rounding the exact minimizer onto the value grid moves each edge term
    // by at most 2 w delta and each fidelity term by at most delta (values
    // and datum live in [0,1]), so the brute optimum can sit at most this
    // far above the exact one.
    double delta = 0.5 / 20.0;
    double slack = 2.0 * delta * 0.3 * double(n) +
                   grid.cell_measure() * double(n) * delta + 1e-9;
    CHECK(brute.energy <= exact.energy + slack);
    CHECK(exact.energy ==
          doctest::Approx(chain_energy(g, w, psi, exact.u)).epsilon(1e-12));
  }
}

TEST_CASE("exact solutions are coordinatewise optimal") {
  Rng rng(33);
  Grid grid = Grid::line(24, 1.0 / 24);
  ScalarField g = random_smooth(grid, rng);
  auto w = random_positive_weights(23, 0.005, 0.05, rng);
  auto psi = FidelityTerm::quadratic(g);
  Solution1D sol = solve_1d_exact(g, w, psi);
  double base = chain_energy(g, w, psi, sol.u);
  for (std::size_t i = 0; i < sol.u.size(); ++i) {
    for (double d : {-1e-4, 1e-4, -0.05, 0.05}) {
      auto pert = sol.u;
      pert[i] += d;
      CHECK(chain_energy(g, w, psi, pert) >= base - 1e-12);
    }
  }
}

TEST_CASE("huge weights reduce to the mean") {
  Grid grid = Grid::line(9, 1.0 / 9);
  ScalarField g(grid, {4.0, -1.0, 2.5, 0.0, 3.0, -2.0, 1.0, 0.5, 1.0});
  std::vector<double> w(8, 1e4);
  Solution1D sol = solve_1d_exact(g, w, FidelityTerm::quadratic(g));
  double mean = 0.0;
  for (double v : g.values()) mean += v / 9.0;
  for (double v : sol.u) CHECK(v == doctest::Approx(mean).epsilon(1e-10));
}

TEST_CASE("maximum principle for the chain solver") {
  Rng rng(34);
  for (int trial = 0; trial < 8; ++trial) {
    Grid grid = Grid::line(40, 1.0 / 40);
    ScalarField g = random_staircase(grid, 5, rng);
    auto w = random_positive_weights(39, 0.001, 0.2, rng);
    Solution1D sol = solve_1d_exact(g, w, FidelityTerm::quadratic(g));
    for (double v : sol.u) {
      CHECK(v >= g.min() - 1e-12);
      CHECK(v <= g.max() + 1e-12);
    }
  }
}

TEST_CASE("power fidelity goes through the bisection path") {
  Rng rng(35);
  std::vector<double> value_grid;
  for (int k = 0; k <= 16; ++k) value_grid.push_back(double(k) / 16.0);
  Grid grid = Grid::line(4, 0.25);
  ScalarField g(grid, {0.0, 1.0, 0.25, 0.75});
  auto psi = FidelityTerm::power(g, 1.5);
  std::vector<double> w(3, 0.05);
  Solution1D exact = solve_1d_exact(g, w, psi);
  Solution1D brute = brute_force_1d(g, w, psi, value_grid);
  CHECK(exact.energy <= brute.energy + 1e-10);
  CHECK(exact.energy ==
        doctest::Approx(chain_energy(g, w, psi, exact.u)).epsilon(1e-9));
}

TEST_CASE("input validation of the chain solver") {
  Grid grid = Grid::line(4, 0.25);
  ScalarField g(grid, 0.0);
  auto psi = FidelityTerm::quadratic(g);
  CHECK_THROWS_AS(solve_1d_exact(g, {0.1, 0.1}, psi), std::invalid_argument);
  CHECK_THROWS_AS(solve_1d_exact(g, {0.1, -0.1, 0.1}, psi),
                  std::invalid_argument);
  Grid per = Grid::line(4, 0.25, Boundary::periodic);
  ScalarField gp(per, 0.0);
  CHECK_THROWS_AS(solve_1d_exact(gp, {0.1, 0.1, 0.1}, FidelityTerm::quadratic(gp)),
                  std::invalid_argument);
  Grid g2 = Grid::rect(2, 2, 0.5, 0.5);
  ScalarField g2f(g2, 0.0);
  CHECK_THROWS_AS(solve_1d_exact(g2f, {0.1}, FidelityTerm::quadratic(g2f)),
                  std::invalid_argument);
}

TEST_CASE("brute force guardrails") {
  Grid grid = Grid::line(7, 1.0 / 7);
  ScalarField g(grid, 0.0);
  auto psi = FidelityTerm::quadratic(g);
  std::vector<double> w(6, 0.1);
  CHECK_THROWS_AS(brute_force_1d(g, w, psi, {0.0, 1.0}), std::invalid_argument);
}

TEST_CASE("flat zone report finds maximal runs") {
  Grid grid = Grid::line(8, 0.125);
  ScalarField u(grid, {0.0, 0.0, 0.0, 1.0, 1.0, 2.0, 3.0, 4.0});
  auto zones = flat_zone_report(u, 1e-12);
  REQUIRE(zones.size() == 2);
  CHECK(zones[0].begin == 0);
  CHECK(zones[0].end == 2);
  CHECK(zones[0].level == doctest::Approx(0.0));
  CHECK(zones[0].extent == doctest::Approx(3 * 0.125));
  CHECK(zones[1].begin == 3);
  CHECK(zones[1].end == 4);
}
