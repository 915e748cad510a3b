#include "wtv/io.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "wtv/util.hpp"

namespace wtv {
namespace {

using nlohmann::json;

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::ofstream open_out(const std::string& path, bool binary) {
  std::ofstream out(path, binary ? std::ios::binary : std::ios::out);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  return out;
}

std::ifstream open_in(const std::string& path, bool binary) {
  std::ifstream in(path, binary ? std::ios::binary : std::ios::in);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  return in;
}

std::string boundary_name(Boundary bc) {
  return bc == Boundary::periodic ? "periodic" : "neumann";
}

Boundary boundary_from_name(const std::string& name) {
  if (name == "periodic") return Boundary::periodic;
  if (name == "neumann") return Boundary::neumann;
  throw std::runtime_error("unknown boundary condition: " + name);
}

std::string grid_comment(const Grid& grid) {
  std::ostringstream os;
  os << "# grid " << grid.dimension();
  for (int a = 0; a < grid.dimension(); ++a) os << ' ' << grid.extent(a);
  for (int a = 0; a < grid.dimension(); ++a)
    os << ' ' << format_double(grid.spacing(a));
  for (int a = 0; a < grid.dimension(); ++a)
    os << ' ' << format_double(grid.origin(a));
  os << ' ' << boundary_name(grid.boundary());
  return os.str();
}

Grid grid_from_comment(const std::string& comment) {
  std::istringstream is(comment);
  int dim = 0;
  is >> dim;
  if (dim == 1) {
    int n = 0;
    double h = 0.0, origin = 0.0;
    std::string bc;
    is >> n >> h >> origin >> bc;
    if (!is) throw std::runtime_error("malformed grid comment: " + comment);
    return Grid::line(n, h, boundary_from_name(bc), origin);
  }
  if (dim == 2) {
    int n0 = 0, n1 = 0;
    double h0 = 0.0, h1 = 0.0, o0 = 0.0, o1 = 0.0;
    std::string bc;
    is >> n0 >> n1 >> h0 >> h1 >> o0 >> o1 >> bc;
    if (!is) throw std::runtime_error("malformed grid comment: " + comment);
    return Grid::rect(n0, n1, h0, h1, boundary_from_name(bc), o0, o1);
  }
  throw std::runtime_error("unsupported grid dimension in header");
}

/// Reads netpbm header tokens, capturing "# grid ..." and "# range ..."
/// comments along the way.
struct PnmHeader {
  std::string magic;
  int width = 0;
  int height = 0;
  int maxval = 0;  // absent for PBM
  bool has_grid = false;
  std::string grid_payload;
  bool has_range = false;
  double range_min = 0.0;
  double range_max = 0.0;
};

PnmHeader read_pnm_header(std::istream& in, bool expect_maxval) {
  PnmHeader hd;
  int needed = expect_maxval ? 3 : 2;
  int got = 0;
  in >> hd.magic;
  if (!in) throw std::runtime_error("truncated netpbm header");
  while (got < needed) {
    int c = in.peek();
    if (c == EOF) throw std::runtime_error("truncated netpbm header");
    if (std::isspace(c)) {
      in.get();
      continue;
    }
    if (c == '#') {
      std::string line;
      std::getline(in, line);
      std::istringstream ls(line.substr(1));
      std::string tag;
      ls >> tag;
      if (tag == "grid") {
        std::getline(ls, hd.grid_payload);
        hd.has_grid = true;
      } else if (tag == "range") {
        ls >> hd.range_min >> hd.range_max;
        hd.has_range = static_cast<bool>(ls);
      }
      continue;
    }
    int value = 0;
    in >> value;
    if (!in) throw std::runtime_error("malformed netpbm header");
    if (got == 0)
      hd.width = value;
    else if (got == 1)
      hd.height = value;
    else
      hd.maxval = value;
    ++got;
  }
  in.get();  // single whitespace separating header from payload
  return hd;
}

Grid require_grid(const PnmHeader& hd) {
  if (hd.has_grid) return grid_from_comment(hd.grid_payload);
  // Files written elsewhere carry no geometry; assume unit cells.
  if (hd.height == 1) return Grid::line(hd.width, 1.0, Boundary::neumann);
  return Grid::rect(hd.height, hd.width, 1.0, 1.0, Boundary::neumann);
}

json json_of(const EnergyBreakdown& e) {
  return json{{"tv", e.tv}, {"fidelity", e.fidelity}, {"total", e.total}};
}

json json_of(const JumpRecord& r) {
  return json{{"axis", r.axis},         {"i0", r.i0},
              {"i1", r.i1},             {"location", r.location},
              {"u_minus", r.u_minus},   {"u_plus", r.u_plus},
              {"height", r.height},     {"sign", r.sign}};
}

json json_of_jumps(const std::vector<JumpRecord>& records) {
  json arr = json::array();
  for (const auto& r : records) arr.push_back(json_of(r));
  return arr;
}

}  // namespace

void write_csv(const std::string& path, const ScalarField& u) {
  auto out = open_out(path, false);
  const Grid& grid = u.grid();
  if (grid.dimension() == 1) {
    for (int i = 0; i < grid.extent(0); ++i)
      out << format_double(u(i)) << '\n';
  } else {
    for (int i0 = 0; i0 < grid.extent(0); ++i0) {
      for (int i1 = 0; i1 < grid.extent(1); ++i1) {
        if (i1 > 0) out << ',';
        out << format_double(u(i0, i1));
      }
      out << '\n';
    }
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::vector<std::vector<double>> read_csv(const std::string& path) {
  auto in = open_in(path, false);
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::size_t pos = 0;
    while (pos <= line.size()) {
      std::size_t comma = line.find(',', pos);
      std::string cell = line.substr(
          pos, comma == std::string::npos ? std::string::npos : comma - pos);
      try {
        row.push_back(std::stod(cell));
      } catch (const std::exception&) {
        throw std::runtime_error("bad number '" + cell + "' in " + path);
      }
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw std::runtime_error("empty CSV: " + path);
  for (const auto& row : rows)
    if (row.size() != rows.front().size())
      throw std::runtime_error("ragged CSV rows in " + path);
  return rows;
}

void write_checkpoints_csv(const std::string& path,
                           const std::vector<Checkpoint>& history) {
  auto out = open_out(path, false);
  out << "iter,primal,dual,gap\n";
  for (const auto& c : history)
    out << c.iter << ',' << format_double(c.primal) << ','
        << format_double(c.dual) << ',' << format_double(c.gap) << '\n';
  if (!out) throw std::runtime_error("write failed: " + path);
}

void write_jumps_csv(const std::string& path, const JumpSet& jumps) {
  auto out = open_out(path, false);
  out << "location,u_minus,u_plus,height,axis\n";
  for (const auto& r : jumps.jumps)
    out << format_double(r.location) << ',' << format_double(r.u_minus) << ','
        << format_double(r.u_plus) << ',' << format_double(r.height) << ','
        << r.axis << '\n';
  if (!out) throw std::runtime_error("write failed: " + path);
}

void write_pgm(const std::string& path, const ScalarField& u) {
  const Grid& grid = u.grid();
  int width = grid.dimension() == 1 ? grid.extent(0) : grid.extent(1);
  int height = grid.dimension() == 1 ? 1 : grid.extent(0);
  double lo = u.min();
  double hi = u.max();
  double range = hi - lo;

  auto out = open_out(path, true);
  out << "P5\n";
  out << "# range " << format_double(lo) << ' ' << format_double(hi) << '\n';
  out << grid_comment(grid) << '\n';
  out << width << ' ' << height << "\n65535\n";
  std::vector<unsigned char> payload;
  payload.reserve(static_cast<std::size_t>(width) * height * 2);
  for (int i = 0; i < grid.cell_count(); ++i) {
    double t = range > 0.0 ? (u.values()[i] - lo) / range : 0.0;
    auto q = static_cast<std::uint16_t>(std::lround(t * 65535.0));
    payload.push_back(static_cast<unsigned char>(q >> 8));
    payload.push_back(static_cast<unsigned char>(q & 0xff));
  }
  out.write(reinterpret_cast<const char*>(payload.data()),
            static_cast<std::streamsize>(payload.size()));
  if (!out) throw std::runtime_error("write failed: " + path);
}

ScalarField read_pgm(const std::string& path) {
  auto in = open_in(path, true);
  PnmHeader hd = read_pnm_header(in, true);
  if (hd.magic != "P5") throw std::runtime_error("not a binary PGM: " + path);
  if (hd.maxval != 65535 && hd.maxval != 255)
    throw std::runtime_error("unsupported PGM maxval in " + path);
  Grid grid = require_grid(hd);
  if (grid.cell_count() != hd.width * hd.height)
    throw std::runtime_error("PGM dimensions disagree with grid comment in " +
                             path);
  int bytes_per = hd.maxval == 65535 ? 2 : 1;
  std::vector<unsigned char> payload(
      static_cast<std::size_t>(grid.cell_count()) * bytes_per);
  in.read(reinterpret_cast<char*>(payload.data()),
          static_cast<std::streamsize>(payload.size()));
  if (in.gcount() != static_cast<std::streamsize>(payload.size()))
    throw std::runtime_error("truncated PGM payload in " + path);

  double lo = hd.has_range ? hd.range_min : 0.0;
  double hi = hd.has_range ? hd.range_max : static_cast<double>(hd.maxval);
  double range = hi - lo;
  std::vector<double> values(grid.cell_count());
  for (int i = 0; i < grid.cell_count(); ++i) {
    int raw = bytes_per == 2
                  ? (payload[2 * i] << 8 | payload[2 * i + 1])
                  : payload[i];
    values[i] = lo + range * (static_cast<double>(raw) / hd.maxval);
  }
  return ScalarField(grid, std::move(values));
}

void write_pbm(const std::string& path, const BinaryField& e) {
  const Grid& grid = e.grid();
  int width = grid.dimension() == 1 ? grid.extent(0) : grid.extent(1);
  int height = grid.dimension() == 1 ? 1 : grid.extent(0);

  auto out = open_out(path, true);
  out << "P4\n" << grid_comment(grid) << '\n' << width << ' ' << height
      << '\n';
  int row_bytes = (width + 7) / 8;
  std::vector<unsigned char> payload(
      static_cast<std::size_t>(row_bytes) * height, 0);
  for (int r = 0; r < height; ++r)
    for (int c = 0; c < width; ++c) {
      bool on = grid.dimension() == 1 ? e(c) : e(r, c);
      if (on)
        payload[static_cast<std::size_t>(r) * row_bytes + c / 8] |=
            static_cast<unsigned char>(0x80 >> (c % 8));
    }
  out.write(reinterpret_cast<const char*>(payload.data()),
            static_cast<std::streamsize>(payload.size()));
  if (!out) throw std::runtime_error("write failed: " + path);
}

BinaryField read_pbm(const std::string& path) {
  auto in = open_in(path, true);
  PnmHeader hd = read_pnm_header(in, false);
  if (hd.magic != "P4") throw std::runtime_error("not a binary PBM: " + path);
  Grid grid = require_grid(hd);
  if (grid.cell_count() != hd.width * hd.height)
    throw std::runtime_error("PBM dimensions disagree with grid comment in " +
                             path);
  int row_bytes = (hd.width + 7) / 8;
  std::vector<unsigned char> payload(
      static_cast<std::size_t>(row_bytes) * hd.height);
  in.read(reinterpret_cast<char*>(payload.data()),
          static_cast<std::streamsize>(payload.size()));
  if (in.gcount() != static_cast<std::streamsize>(payload.size()))
    throw std::runtime_error("truncated PBM payload in " + path);

  BinaryField e(grid);
  for (int r = 0; r < hd.height; ++r)
    for (int c = 0; c < hd.width; ++c) {
      bool on = payload[static_cast<std::size_t>(r) * row_bytes + c / 8] &
                (0x80 >> (c % 8));
      if (grid.dimension() == 1)
        e.set(c, 0, on);
      else
        e.set(r, c, on);
    }
  return e;
}

std::string to_json_string(const EnergyBreakdown& e) {
  return json_of(e).dump(2);
}

std::string to_json_string(const SolverReport& r) {
  json j{{"converged", r.converged}, {"iters", r.iters},
         {"primal", r.primal},       {"dual", r.dual},
         {"gap", r.gap},             {"energy", json_of(r.energy)},
         {"checkpoints", r.history.size()}};
  return j.dump(2);
}

std::string to_json_string(const JumpSet& j) {
  json out{{"count", j.jumps.size()}, {"jumps", json_of_jumps(j.jumps)}};
  return out.dump(2);
}

std::string to_json_string(const LevelSetReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks)
    checks.push_back(json{{"level", c.level},
                          {"energy_superlevel", c.energy_superlevel},
                          {"energy_mincut", c.energy_mincut},
                          {"slack", c.slack},
                          {"sets_equal", c.sets_equal},
                          {"tie_prone", c.tie_prone}});
  json j{{"max_slack", r.max_slack},
         {"max_slack_all", r.max_slack_all},
         {"all_sets_equal", r.all_sets_equal},
         {"checks", checks}};
  return j.dump(2);
}

std::string to_json_string(const InclusionReport& r) {
  json j{{"total", r.total},
         {"matched", r.matched},
         {"ok", r.ok},
         {"violations", json_of_jumps(r.violations)}};
  return j.dump(2);
}

std::string to_json_string(const ContrastReport& r) {
  json pairs = json::array();
  for (const auto& p : r.matched)
    pairs.push_back(json{{"observed", json_of(p.observed)},
                         {"reference", json_of(p.reference)},
                         {"excess", p.excess}});
  json j{{"ok", r.ok},
         {"max_excess", r.max_excess},
         {"matched", pairs},
         {"unmatched", json_of_jumps(r.unmatched)}};
  return j.dump(2);
}

std::string to_json_string(const StabilityCheck& r) {
  json j{{"lambda", r.lambda},     {"mu", r.mu},
         {"bound", r.bound},       {"observed", r.observed},
         {"slack", r.slack},       {"pass", r.pass}};
  return j.dump(2);
}

std::string to_json_string(const EpsilonInclusionCheck& r) {
  json j{{"hypothesis_ok", r.hypothesis_ok},
         {"skipped", r.skipped},
         {"allowed_diff", r.allowed_diff},
         {"checked", r.checked},
         {"matched", r.matched},
         {"violations", json_of_jumps(r.violations)},
         {"pass", r.pass},
         {"note", r.note}};
  return j.dump(2);
}

void write_text_file(const std::string& path, const std::string& content) {
  auto out = open_out(path, true);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
  auto in = open_in(path, true);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace wtv
