#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "wtv/io.hpp"
#include "wtv/synth.hpp"

using namespace wtv;
namespace fs = std::filesystem;

namespace {

// Fresh scratch directory per test run; cleaned up by the fixture.
struct TempDir {
  fs::path dir;
  TempDir() {
    dir = fs::temp_directory_path() /
          ("wtv_io_test_" + std::to_string(std::rand()));
    fs::create_directories(dir);
  }
  ~TempDir() { fs::remove_all(dir); }
  std::string path(const std::string& name) const { return (dir / name).string(); }
};

}  // namespace

TEST_CASE("csv round trip preserves every bit") {
  TempDir tmp;
  Rng rng(91);
  Grid grid = Grid::rect(5, 7, 0.2, 0.1);
  ScalarField u = random_smooth(grid, rng);
  u.values()[3] = 1.0 / 3.0;
  u.values()[10] = 1e-17;
  write_csv(tmp.path("u.csv"), u);
  auto rows = read_csv(tmp.path("u.csv"));
  REQUIRE(rows.size() == 5);
  for (const auto& row : rows) REQUIRE(row.size() == 7);
  for (int i0 = 0; i0 < 5; ++i0)
    for (int i1 = 0; i1 < 7; ++i1) CHECK(rows[i0][i1] == u(i0, i1));
}

TEST_CASE("1d csv is one value per line") {
  TempDir tmp;
  Grid grid = Grid::line(4, 0.25);
  ScalarField u(grid, {0.5, -1.25, 3.0, 0.0});
  write_csv(tmp.path("u.csv"), u);
  auto rows = read_csv(tmp.path("u.csv"));
  REQUIRE(rows.size() == 4);
  for (std::size_t k = 0; k < 4; ++k) {
    REQUIRE(rows[k].size() == 1);
    CHECK(rows[k][0] == u.values()[k]);
  }
}

TEST_CASE("ragged csv is rejected") {
  TempDir tmp;
  write_text_file(tmp.path("bad.csv"), "1,2,3\n4,5\n");
  CHECK_THROWS_AS(read_csv(tmp.path("bad.csv")), std::runtime_error);
  CHECK_THROWS_AS(read_csv(tmp.path("missing.csv")), std::runtime_error);
  write_text_file(tmp.path("junk.csv"), "1,fish\n");
  CHECK_THROWS(read_csv(tmp.path("junk.csv")));
}

TEST_CASE("pgm quantizes within range/65535 and keeps the grid") {
  TempDir tmp;
  Rng rng(92);
  Grid grid = Grid::rect(9, 6, 0.125, 0.25, Boundary::periodic);
  ScalarField u = random_smooth(grid, rng);
  write_pgm(tmp.path("u.pgm"), u);
  ScalarField back = read_pgm(tmp.path("u.pgm"));
  CHECK(back.grid().same_layout(grid));
  CHECK(back.grid().spacing(0) == doctest::Approx(0.125));
  CHECK(back.grid().spacing(1) == doctest::Approx(0.25));
  double range = u.max() - u.min();
  for (std::size_t k = 0; k < u.values().size(); ++k)
    CHECK(std::fabs(back.values()[k] - u.values()[k]) <= range / 65535.0 + 1e-12);
}

TEST_CASE("constant-field pgm survives the degenerate range") {
  TempDir tmp;
  Grid grid = Grid::rect(3, 3, 1.0, 1.0);
  ScalarField u(grid, 0.75);
  write_pgm(tmp.path("c.pgm"), u);
  ScalarField back = read_pgm(tmp.path("c.pgm"));
  for (double v : back.values()) CHECK(v == doctest::Approx(0.75));
}

TEST_CASE("pbm round trip is exact including odd widths") {
  TempDir tmp;
  Rng rng(93);
  // Width 11 forces padding bits in the last byte of each packed row.
  Grid grid = Grid::rect(5, 11, 0.2, 0.125);
  BinaryField e(grid, false);
  for (int i0 = 0; i0 < 5; ++i0)
    for (int i1 = 0; i1 < 11; ++i1)
      e.set(i0, i1, rng.uniform(0.0, 1.0) < 0.5);
  write_pbm(tmp.path("e.pbm"), e);
  BinaryField back = read_pbm(tmp.path("e.pbm"));
  CHECK(back.grid().same_layout(grid));
  CHECK(back == e);
}

TEST_CASE("checkpoint and jump csv files have the documented shape") {
  TempDir tmp;
  std::vector<Checkpoint> hist;
  hist.push_back({0, 5.0, 1.0, 4.0});
  hist.push_back({100, 4.5, 4.0, 0.5});
  write_checkpoints_csv(tmp.path("ck.csv"), hist);
  std::string text = read_text_file(tmp.path("ck.csv"));
  CHECK(text.rfind("iter,primal,dual,gap\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 3);

  Grid grid = Grid::line(4, 0.25);
  ScalarField u(grid, {0.0, 0.0, 1.0, 1.0});
  write_jumps_csv(tmp.path("j.csv"), detect_jumps(u, 0.5));
  std::string jtext = read_text_file(tmp.path("j.csv"));
  CHECK(jtext.find("location") != std::string::npos);
  CHECK(std::count(jtext.begin(), jtext.end(), '\n') == 2);
}

TEST_CASE("json serializers emit parseable documents") {
  Grid grid = Grid::line(6, 1.0 / 6);
  ScalarField u(grid, {0, 0, 1, 1, 2, 2});
  JumpSet js = detect_jumps(u, 0.5);
  auto parsed = nlohmann::json::parse(to_json_string(js));
  CHECK(parsed["count"] == 2);
  CHECK(parsed["jumps"].size() == 2);
  CHECK(parsed["jumps"][0]["height"] == doctest::Approx(1.0));

  StabilityCheck chk = lambda_stability_check(u, 0.05, 0.06);
  auto pj = nlohmann::json::parse(to_json_string(chk));
  CHECK(pj["lambda"] == doctest::Approx(0.05));
  CHECK(pj.contains("bound"));
  CHECK(pj.contains("pass"));
}

TEST_CASE("text file round trip and missing-file error") {
  TempDir tmp;
  std::string body = "line one\nline two\n";
  write_text_file(tmp.path("t.txt"), body);
  CHECK(read_text_file(tmp.path("t.txt")) == body);
  CHECK_THROWS_AS(read_text_file(tmp.path("absent.txt")), std::runtime_error);
}
