#include "wtv/experiment.hpp"

#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

#include "wtv/io.hpp"
#include "wtv/util.hpp"

namespace wtv {
namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != value.size())
    throw std::invalid_argument("config key '" + key +
                                "': not a number: " + value);
  return v;
}

long parse_long(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  long v = 0;
  try {
    v = std::stol(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != value.size())
    throw std::invalid_argument("config key '" + key +
                                "': not an integer: " + value);
  return v;
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "on") return true;
  if (value == "false" || value == "0" || value == "off") return false;
  throw std::invalid_argument("config key '" + key +
                              "': not a boolean: " + value);
}

GradientNorm norm_of(const std::string& name) {
  if (name == "euclidean") return GradientNorm::euclidean;
  if (name == "manhattan") return GradientNorm::manhattan;
  throw std::invalid_argument("config key 'gradient_norm': unknown value: " +
                              name);
}

Boundary boundary_of(const std::string& name) {
  if (name == "neumann") return Boundary::neumann;
  if (name == "periodic") return Boundary::periodic;
  throw std::invalid_argument("config key 'boundary': unknown value: " + name);
}

}  // namespace

void apply_override(ExperimentConfig& c, const std::string& key,
                    const std::string& value) {
  if (key == "model") c.model = value;
  else if (key == "gradient_norm") c.gradient_norm = value;
  else if (key == "boundary") c.boundary = value;
  else if (key == "preset") c.preset = value;
  else if (key == "input_csv") c.input_csv = value;
  else if (key == "spacing") c.spacing = parse_double(key, value);
  else if (key == "origin") c.origin = parse_double(key, value);
  else if (key == "weight") c.weight = value;
  else if (key == "lambda") c.lambda = parse_double(key, value);
  else if (key == "a11") c.a11 = parse_double(key, value);
  else if (key == "a12") c.a12 = parse_double(key, value);
  else if (key == "a22") c.a22 = parse_double(key, value);
  else if (key == "q") c.q = parse_double(key, value);
  else if (key == "tau") c.tau = parse_double(key, value);
  else if (key == "sigma") c.sigma = parse_double(key, value);
  else if (key == "theta") c.theta = parse_double(key, value);
  else if (key == "max_iters") c.max_iters = int(parse_long(key, value));
  else if (key == "gap_tol") c.gap_tol = parse_double(key, value);
  else if (key == "accelerate") c.accelerate = parse_bool(key, value);
  else if (key == "threshold") c.threshold = parse_double(key, value);
  else if (key == "gradw_threshold")
    c.gradw_threshold = parse_double(key, value);
  else if (key == "radius") c.radius = int(parse_long(key, value));
  else if (key == "epsilon") c.epsilon = parse_double(key, value);
  else if (key == "levels") c.levels = int(parse_long(key, value));
  else if (key == "formats") c.formats = value;
  else if (key == "seed") c.seed = (unsigned long)(parse_long(key, value));
  else
    throw std::invalid_argument("unknown config key: " + key);
}

ExperimentConfig parse_config_text(const std::string& text) {
  ExperimentConfig c;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": expected key = value");
    try {
      apply_override(c, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": " + e.what());
    }
  }
  return c;
}

ExperimentConfig parse_config_file(const std::string& path) {
  return parse_config_text(read_text_file(path));
}

bool wants_format(const ExperimentConfig& config, const std::string& fmt) {
  std::istringstream in(config.formats);
  std::string item;
  while (std::getline(in, item, ','))
    if (trim(item) == fmt) return true;
  return false;
}

SolverParams solver_params(const ExperimentConfig& c) {
  SolverParams p;
  p.tau = c.tau;
  p.sigma = c.sigma;
  p.theta = c.theta;
  p.max_iters = c.max_iters;
  p.gap_tol = c.gap_tol;
  p.accelerate = c.accelerate;
  return p;
}

Preset build_problem(const ExperimentConfig& c) {
  if (!c.preset.empty()) {
    Preset p = make_preset(c.preset);
    if (c.threshold > 0.0) p.jump_threshold = c.threshold;
    if (c.gradw_threshold > 0.0) p.gradw_threshold = c.gradw_threshold;
    return p;
  }
  if (c.input_csv.empty())
    throw std::invalid_argument(
        "config needs either 'preset' or 'input_csv'");
  require(c.model == "weighted" || c.model == "elliptic" ||
              c.model == "isotropic",
          "config key 'model': unknown value: " + c.model);

  auto rows = read_csv(c.input_csv);
  Boundary bc = boundary_of(c.boundary);
  Grid grid = Grid::line(1, 1.0);
  std::vector<double> flat;
  if (rows.size() == 1 || rows.front().size() == 1) {
    // Single row or single column: a 1D signal.
    for (const auto& row : rows)
      for (double v : row) flat.push_back(v);
    int n = int(flat.size());
    double h = c.spacing > 0.0 ? c.spacing : 1.0 / n;
    grid = Grid::line(n, h, bc, c.origin);
  } else {
    int n0 = int(rows.size());
    int n1 = int(rows.front().size());
    double h0 = c.spacing > 0.0 ? c.spacing : 1.0 / n0;
    double h1 = c.spacing > 0.0 ? c.spacing : 1.0 / n1;
    grid = Grid::rect(n0, n1, h0, h1, bc, c.origin, c.origin);
    for (const auto& row : rows)
      for (double v : row) flat.push_back(v);
  }
  ScalarField g(grid, std::move(flat));

  GradientNorm norm = norm_of(c.gradient_norm);
  require(c.lambda > 0.0, "lambda must be positive");

  FinslerIntegrand phi = FinslerIntegrand::isotropic(grid, norm);
  ScalarField weight_cells(grid, c.lambda);
  if (c.model == "elliptic") {
    phi = FinslerIntegrand::elliptic(grid, c.lambda, {c.a11, c.a12, c.a22});
  } else if (c.model == "isotropic" || c.weight == "constant") {
    phi = FinslerIntegrand::weighted_constant(grid, c.lambda, norm);
  } else {
    require(grid.dimension() == 1, "formula weights are 1D");
    std::string wname = c.weight;
    double scale = c.lambda;
    phi = FinslerIntegrand::weighted(
        grid,
        [wname, scale](double x0, double) {
          return scale * weight_formula(wname, x0);
        },
        norm);
    for (int i0 = 0; i0 < grid.extent(0); ++i0)
      weight_cells.at(i0) = scale * weight_formula(wname, grid.coord(0, i0));
  }

  Preset p{"custom",
           "custom instance",
           grid,
           g,
           weight_cells,
           phi,
           c.q == 2.0 ? FidelityTerm::quadratic(g) : FidelityTerm::power(g, c.q)};
  p.norm = norm;
  p.lambda = c.lambda;
  p.weight_name = c.model == "elliptic" ? "elliptic" : c.weight;
  p.jump_threshold = c.threshold;
  p.gradw_threshold = c.gradw_threshold;
  p.solver = solver_params(c);
  return p;
}

}  // namespace wtv
