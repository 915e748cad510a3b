#include <cmath>
#include <vector>

#include "doctest.h"
#include "wtv/jumps.hpp"
#include "wtv/synth.hpp"

using namespace wtv;

TEST_CASE("single staircase jump is detected with 2-cell means") {
  Grid grid = Grid::line(4, 0.25);
  ScalarField u(grid, {0.0, 0.1, 1.1, 1.2});
  JumpSet js = detect_jumps(u, 0.5);
  REQUIRE(js.jumps.size() == 1);
  const JumpRecord& j = js.jumps[0];
  CHECK(j.axis == 0);
  CHECK(j.i0 == 1);
  CHECK(j.location == doctest::Approx(0.5));
  // One-sided means: (0 + 0.1)/2 = 0.05 and (1.1 + 1.2)/2 = 1.15.
  CHECK(j.u_minus == doctest::Approx(0.05));
  CHECK(j.u_plus == doctest::Approx(1.15));
  CHECK(j.height == doctest::Approx(1.1));
  CHECK(j.sign == 1);
}

TEST_CASE("increment alone is not enough; the stencil means must separate") {
  Grid grid = Grid::line(5, 0.2);
  // Big increment up then immediately back down: a spike, not a jump. The
  // 2-cell means straddling either edge stay close.
  ScalarField spike(grid, {0.0, 0.0, 1.0, 0.0, 0.0});
  JumpSet js = detect_jumps(spike, 0.8);
  CHECK(js.jumps.empty());
}

TEST_CASE("descending jumps carry sign -1") {
  Grid grid = Grid::line(4, 0.25);
  ScalarField u(grid, {1.0, 1.0, 0.0, 0.0});
  JumpSet js = detect_jumps(u, 0.5);
  REQUIRE(js.jumps.size() == 1);
  CHECK(js.jumps[0].sign == -1);
  CHECK(js.jumps[0].height == doctest::Approx(1.0));
  CHECK(js.jumps[0].u_plus == doctest::Approx(1.0));
}

TEST_CASE("periodic wrap produces the seam jump") {
  Grid grid = Grid::line(6, 1.0 / 6, Boundary::periodic);
  ScalarField u(grid, {0.0, 0.0, 0.0, 1.0, 1.0, 1.0});
  JumpSet js = detect_jumps(u, 0.5);
  // Two interfaces: rising at edge 2->3, falling at the wrap edge 5->0.
  REQUIRE(js.jumps.size() == 2);
  CHECK(js.jumps[0].i0 == 2);
  CHECK(js.jumps[0].sign == 1);
  CHECK(js.jumps[1].i0 == 5);
  CHECK(js.jumps[1].sign == -1);
}

TEST_CASE("2D jumps report the axis of the crossed edge") {
  Grid grid = Grid::rect(4, 4, 0.25, 0.25);
  ScalarField u(grid, 0.0);
  for (int i0 = 2; i0 < 4; ++i0)
    for (int i1 = 0; i1 < 4; ++i1) u.at(i0, i1) = 1.0;
  JumpSet js = detect_jumps(u, 0.5);
  REQUIRE(js.jumps.size() == 4);
  for (const JumpRecord& j : js.jumps) {
    CHECK(j.axis == 0);
    CHECK(j.i0 == 1);
    CHECK(j.height == doctest::Approx(1.0));
  }
}

TEST_CASE("default threshold is 20x the largest increment") {
  Grid grid = Grid::line(5, 0.2);
  ScalarField g(grid, {0.0, 0.01, 0.03, 0.035, 0.05});
  CHECK(default_jump_threshold(g) == doctest::Approx(20.0 * 0.02));
  ScalarField flat(grid, 0.7);
  CHECK(default_jump_threshold(flat) > 0.0);  // degenerate case stays usable
}

TEST_CASE("weight gradient jumps flag kinks of w") {
  Grid grid = Grid::line(64, 1.0 / 64);
  ScalarField w(grid, 0.0);
  // Tent with its apex at a cell center: the forward difference quotient
  // flips from +1 to -1 in one step, a clean jump of the weight gradient.
  double apex = grid.coord(0, 32);
  for (int i = 0; i < 64; ++i) {
    double x = grid.coord(0, i);
    w.at(i) = x <= apex ? x : 2.0 * apex - x;
  }
  JumpSet grad = weight_gradient_jumps(w, 1.0);
  REQUIRE(grad.jumps.size() == 1);
  CHECK(grad.jumps[0].i0 == 31);
  CHECK(grad.jumps[0].location == doctest::Approx(0.5));
  CHECK(grad.jumps[0].height == doctest::Approx(2.0));
  CHECK(grad.jumps[0].sign == -1);
  // The weight itself has no jump at any sane threshold.
  CHECK(detect_jumps(w, 0.3).jumps.empty());
}

TEST_CASE("inclusion matches jumps within the Chebyshev radius") {
  Grid grid = Grid::line(8, 0.125);
  ScalarField u(grid, {0, 0, 0, 1, 1, 1, 2, 2});
  ScalarField g(grid, {0, 0, 1, 1, 1, 1, 2, 2});
  JumpSet ju = detect_jumps(u, 0.5);
  JumpSet jg = detect_jumps(g, 0.5);
  REQUIRE(ju.jumps.size() == 2);
  // u jumps at edges (2,3) and (5,6); g jumps at (1,2) and (5,6).
  InclusionReport rep = check_jump_inclusion(ju, {jg}, 1);
  CHECK(rep.ok);
  CHECK(rep.matched == 2);
  // Radius 0 demands exact edge agreement and the first jump fails it.
  InclusionReport strict = check_jump_inclusion(ju, {jg}, 0);
  CHECK_FALSE(strict.ok);
  CHECK(strict.matched == 1);
  REQUIRE(strict.violations.size() == 1);
  CHECK(strict.violations[0].i0 == 2);
}

TEST_CASE("inclusion may draw from several allowed sets") {
  Grid grid = Grid::line(8, 0.125);
  ScalarField u(grid, {0, 0, 1, 1, 1, 2, 2, 2});
  ScalarField a(grid, {0, 0, 1, 1, 1, 1, 1, 1});
  ScalarField b(grid, {0, 0, 0, 0, 0, 1, 1, 1});
  JumpSet ju = detect_jumps(u, 0.5);
  REQUIRE(ju.jumps.size() == 2);
  CHECK_FALSE(check_jump_inclusion(ju, {detect_jumps(a, 0.5)}, 1).ok);
  CHECK(check_jump_inclusion(
            ju, {detect_jumps(a, 0.5), detect_jumps(b, 0.5)}, 1)
            .ok);
}

TEST_CASE("inclusion radius wraps on periodic grids") {
  Grid grid = Grid::line(8, 0.125, Boundary::periodic);
  ScalarField u(grid, {0, 1, 1, 1, 1, 0, 0, 0});  // rise at edge 0, fall at 4
  ScalarField g(grid, {1, 1, 1, 1, 0, 0, 0, 0});  // fall at 3, rise at wrap edge 7
  JumpSet ju = detect_jumps(u, 0.5);
  JumpSet jg = detect_jumps(g, 0.5);
  REQUIRE(ju.jumps.size() == 2);
  REQUIRE(jg.jumps.size() == 2);
  // Base cells 0 and 7 are one step apart only through the wrap.
  CHECK(check_jump_inclusion(ju, {jg}, 1).ok);
}

TEST_CASE("contrast report flags amplified and unmatched jumps") {
  Grid grid = Grid::line(8, 0.125);
  ScalarField g(grid, {0, 0, 0, 0, 1, 1, 1, 1});
  JumpSet jg = detect_jumps(g, 0.5);

  ScalarField same(grid, {0, 0, 0, 0, 1, 1, 1, 1});
  ContrastReport ok = check_contrast_decrease(detect_jumps(same, 0.5), jg, 1, 1e-3);
  CHECK(ok.ok);
  CHECK(ok.max_excess == doctest::Approx(0.0));
  CHECK(ok.unmatched.empty());

  ScalarField amplified(grid, {-0.2, -0.2, -0.2, -0.2, 1.2, 1.2, 1.2, 1.2});
  ContrastReport amp =
      check_contrast_decrease(detect_jumps(amplified, 0.5), jg, 1, 1e-3);
  CHECK_FALSE(amp.ok);
  CHECK(amp.max_excess == doctest::Approx(0.4));

  ScalarField extra(grid, {0, 0, 1, 1, 2, 2, 2, 2});
  ContrastReport un = check_contrast_decrease(detect_jumps(extra, 0.5), jg, 1, 1e-3);
  CHECK_FALSE(un.ok);
  CHECK(un.unmatched.size() == 1);
}

TEST_CASE("lambda stability bound on a step datum") {
  Grid grid = Grid::line(10, 0.1);
  ScalarField g(grid, {0, 0, 0, 0, 0, 1, 1, 1, 1, 1});
  // Equal parameters: the bound degenerates to the solver slack alone and the
  // difference of two identical solves is zero.
  StabilityCheck same = lambda_stability_check(g, 0.05, 0.05);
  CHECK(same.pass);
  CHECK(same.bound == doctest::Approx(0.0));
  CHECK(same.observed <= same.slack);

  // |Omega| = 1, sup|g| = 1, lambda=1, mu=1.1: bound = 2*1*1*0.1/1 = 0.2.
  StabilityCheck far = lambda_stability_check(g, 1.0, 1.1);
  CHECK(far.bound == doctest::Approx(0.2));
  CHECK(far.pass);
  CHECK(far.observed <= far.bound + far.slack);
}

TEST_CASE("random instances satisfy the stability bound") {
  Rng rng(81);
  for (int trial = 0; trial < 5; ++trial) {
    Grid grid = Grid::line(32, 1.0 / 32);
    ScalarField g = random_staircase(grid, 4, rng);
    double lambda = rng.uniform(0.02, 0.5);
    double mu = lambda * rng.uniform(1.0, 1.6);
    StabilityCheck chk = lambda_stability_check(g, lambda, mu);
    CHECK(chk.pass);
  }
}

TEST_CASE("epsilon jump inclusion persists big jumps under small parameter moves") {
  Grid grid = Grid::line(48, 1.0 / 48);
  ScalarField g(grid, 0.0);
  for (int i = 0; i < 48; ++i) g.at(i) = (i < 16 ? 0.0 : (i < 32 ? 0.5 : 1.0));
  double lambda = 0.02;
  double mu = 0.0201;
  EpsilonInclusionCheck chk =
      epsilon_jump_inclusion_check(g, lambda, mu, 0.2, 0.05);
  CHECK_FALSE(chk.skipped);
  CHECK(chk.hypothesis_ok);
  CHECK(chk.pass);
  CHECK(chk.checked >= 1);
  CHECK(chk.matched == chk.checked);
}

TEST_CASE("epsilon inclusion is skipped when the hypothesis fails") {
  Grid grid = Grid::line(16, 1.0 / 16);
  Rng rng(82);
  ScalarField g = random_staircase(grid, 3, rng);
  EpsilonInclusionCheck chk =
      epsilon_jump_inclusion_check(g, 0.02, 0.2, 1e-3, 0.05);
  CHECK(chk.skipped);
  CHECK_FALSE(chk.hypothesis_ok);
  CHECK_FALSE(chk.note.empty());
}
