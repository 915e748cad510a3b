#include <cmath>
#include <limits>
#include <stdexcept>

#include "doctest.h"
#include "wtv/field.hpp"
#include "wtv/grid.hpp"

using namespace wtv;

TEST_CASE("line grid geometry") {
  Grid g = Grid::line(4, 0.25);
  CHECK(g.dimension() == 1);
  CHECK(g.extent(0) == 4);
  CHECK(g.coord(0, 0) == doctest::Approx(0.125));
  CHECK(g.coord(0, 3) == doctest::Approx(0.875));
  CHECK(g.edge_coord(0, 0) == doctest::Approx(0.25));
  CHECK(g.cell_measure() == doctest::Approx(0.25));
  CHECK(g.domain_measure() == doctest::Approx(1.0));
  CHECK(g.edge_extent(0) == 3);

  Grid p = Grid::line(4, 0.25, Boundary::periodic);
  CHECK(p.edge_extent(0) == 4);
  CHECK_FALSE(g.same_layout(p));
}

TEST_CASE("rect grid indexing is row-major") {
  Grid g = Grid::rect(3, 5, 0.5, 0.25, Boundary::neumann, -1.0, 2.0);
  CHECK(g.dimension() == 2);
  CHECK(g.index(0, 0) == 0);
  CHECK(g.index(1, 2) == 7);
  CHECK(g.index(2, 4) == 14);
  CHECK(g.cell_count() == 15);
  CHECK(g.coord(0, 0) == doctest::Approx(-0.75));
  CHECK(g.coord(1, 0) == doctest::Approx(2.125));
  CHECK(g.cell_measure() == doctest::Approx(0.125));
}

TEST_CASE("scalar field rejects non-finite values") {
  Grid g = Grid::line(3, 1.0);
  CHECK_THROWS_AS(ScalarField(g, std::numeric_limits<double>::quiet_NaN()),
                  std::invalid_argument);
  std::vector<double> with_inf{0.0, std::numeric_limits<double>::infinity(),
                               1.0};
  CHECK_THROWS_AS(ScalarField(g, with_inf), std::invalid_argument);
  std::vector<double> short_vec{0.0, 1.0};
  CHECK_THROWS_AS(ScalarField(g, short_vec), std::invalid_argument);
}

TEST_CASE("scalar field statistics") {
  Grid g = Grid::line(4, 1.0);
  ScalarField u(g, {-2.0, 0.5, 1.0, -0.25});
  CHECK(u.min() == -2.0);
  CHECK(u.max() == 1.0);
  CHECK(u.sup_norm() == 2.0);
  u.at(0) = 3.0;
  CHECK(u(0) == 3.0);
}

TEST_CASE("binary field basics") {
  Grid g = Grid::rect(2, 3, 1.0, 1.0);
  BinaryField e(g, false);
  CHECK(e.popcount() == 0);
  e.set(1, 2, true);
  e.set(0, 0, true);
  CHECK(e.popcount() == 2);
  CHECK(e(1, 2));
  CHECK_FALSE(e(0, 1));
  ScalarField s = e.to_scalar();
  CHECK(s(1, 2) == 1.0);
  CHECK(s(0, 1) == 0.0);

  BinaryField f(g, false);
  CHECK_FALSE(e == f);
  f.set(1, 2, true);
  f.set(0, 0, true);
  CHECK(e == f);
}

TEST_CASE("vector field edge layout") {
  SUBCASE("neumann drops the trailing edge") {
    Grid g = Grid::rect(3, 4, 1.0, 1.0);
    VectorField z(g);
    CHECK(z.component(0).size() == std::size_t(2 * 4));
    CHECK(z.component(1).size() == std::size_t(3 * 3));
    z.value(0, 1, 3) = 2.5;
    CHECK(z.value(0, 1, 3) == 2.5);
  }
  SUBCASE("periodic keeps the wrap edge") {
    Grid g = Grid::rect(3, 4, 1.0, 1.0, Boundary::periodic);
    VectorField z(g);
    CHECK(z.component(0).size() == std::size_t(3 * 4));
    CHECK(z.component(1).size() == std::size_t(3 * 4));
    z.value(1, 2, 3) = -1.0;
    CHECK(z.value(1, 2, 3) == -1.0);
  }
}
