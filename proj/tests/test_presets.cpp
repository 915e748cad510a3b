#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "wtv/jumps.hpp"
#include "wtv/presets.hpp"
#include "wtv/solver1d.hpp"

using namespace wtv;

TEST_CASE("every named preset constructs consistently") {
  for (const std::string& name : preset_names()) {
    Preset p = make_preset(name);
    CHECK(p.name == name);
    CHECK(p.g.grid().same_layout(p.grid));
    CHECK(p.weight_cells.grid().same_layout(p.grid));
    CHECK(p.phi.grid().same_layout(p.grid));
    // The diagnostic cell samples may touch zero (the Holder weight vanishes
    // at one cell center); the integrand itself samples edge midpoints and
    // stays positive, which its constructor already enforces.
    CHECK(p.weight_cells.min() >= 0.0);
    CHECK_FALSE(p.title.empty());
  }
  CHECK_THROWS_AS(make_preset("fig99"), std::invalid_argument);
}

TEST_CASE("jump thresholds are pinned where the datum itself jumps") {
  CHECK(make_preset("fig1").jump_threshold == doctest::Approx(0.3));
  CHECK(make_preset("fig2").jump_threshold == doctest::Approx(0.25));
  CHECK(make_preset("fig3").jump_threshold == doctest::Approx(0.25));
  CHECK(make_preset("fig6-9").jump_threshold == doctest::Approx(0.5));
  CHECK(make_preset("fig2").gradw_threshold == doctest::Approx(0.2));
}

TEST_CASE("weight formulas match their closed forms") {
  CHECK(weight_formula("fig2", 0.25) == doctest::Approx(0.7));
  CHECK(weight_formula("fig2", 1.5) == doctest::Approx(1.7));
  CHECK(weight_formula("fig3", 0.5) == doctest::Approx(0.45));
  CHECK(weight_formula("fig4", 0.5) == doctest::Approx(std::pow(0.5, 0.1)));
  CHECK(weight_formula("fig5", 0.5) == doctest::Approx(std::pow(0.5, -0.1)));
  CHECK(weight_formula("smooth", 0.0) == doctest::Approx(2.0));
  CHECK_THROWS_AS(weight_formula("fig7", 0.5), std::invalid_argument);
  for (const std::string& name : weight_formula_names())
    CHECK(std::isfinite(weight_formula(name, 0.37)));
}

TEST_CASE("fig2 weight has a derivative kink at x = 1 but no jump") {
  Preset p = make_preset("fig2");
  JumpSet grad = weight_gradient_jumps(p.weight_cells, p.gradw_threshold);
  bool near_one = false;
  for (const auto& j : grad.jumps)
    if (std::fabs(j.location - 1.0) < 0.02) near_one = true;
  CHECK(near_one);
  CHECK(detect_jumps(p.weight_cells, 0.25).jumps.empty());
}

TEST_CASE("fig1 keeps the datum jumps and no spurious ones") {
  Preset p = make_preset("fig1");
  int n = p.grid.extent(0);
  std::vector<double> w(n - 1, p.lambda);
  Solution1D sol = solve_1d_exact(p.g, w, p.fidelity);
  ScalarField u(p.grid, sol.u);
  JumpSet ju = detect_jumps(u, p.jump_threshold);
  REQUIRE(ju.jumps.size() == 2);
  CHECK(std::fabs(ju.jumps[0].location - 0.55) < 0.01);
  CHECK(std::fabs(ju.jumps[1].location - 0.8) < 0.01);
  JumpSet jg = detect_jumps(p.g, p.jump_threshold);
  CHECK(check_jump_inclusion(ju, {jg}, 1).ok);
}

TEST_CASE("shipped instances cover every anisotropy kind") {
  auto shipped = shipped_instances();
  REQUIRE(shipped.size() >= 4);
  bool manhattan = false, elliptic_seen = false, spatial = false;
  for (const Preset& p : shipped) {
    CHECK(p.g.grid().same_layout(p.grid));
    CHECK(p.grid.cell_count() <= 1000);  // cheap enough for certificate sweeps
    if (p.norm == GradientNorm::manhattan) manhattan = true;
    if (p.weight_name == "elliptic") elliptic_seen = true;
    if (p.phi.has_weight_function()) spatial = true;
  }
  CHECK(manhattan);
  CHECK(elliptic_seen);
  CHECK(spatial);
}
