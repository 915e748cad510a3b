#include "wtv/solver1d.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "wtv/util.hpp"

namespace wtv {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

PiecewiseQuadratic::PiecewiseQuadratic(double a, double b, double c) {
  require(a >= 0.0, "PiecewiseQuadratic: leading coefficient must be >= 0");
  pieces_.push_back({-kInf, a, b, c});
}

std::size_t PiecewiseQuadratic::locate(double t) const {
  std::size_t j = pieces_.size() - 1;
  while (j > 0 && pieces_[j].lo > t) --j;
  return j;
}

double PiecewiseQuadratic::eval(double t) const {
  const Piece& p = pieces_[locate(t)];
  return (p.a * t + p.b) * t + p.c;
}

double PiecewiseQuadratic::deriv(double t) const {
  const Piece& p = pieces_[locate(t)];
  return 2.0 * p.a * t + p.b;
}

double PiecewiseQuadratic::argmin() const {
  // Derivative is nondecreasing across pieces; find the first piece whose
  // right end has nonnegative derivative and solve inside it.
  for (std::size_t j = 0; j < pieces_.size(); ++j) {
    const Piece& p = pieces_[j];
    double hi = j + 1 < pieces_.size() ? pieces_[j + 1].lo : kInf;
    double d_hi = std::isinf(hi) ? (p.a > 0.0 ? kInf : p.b)
                                 : 2.0 * p.a * hi + p.b;
    if (d_hi < 0.0) continue;
    if (p.a > 0.0) {
      double t = -p.b / (2.0 * p.a);
      double lo = p.lo;
      return std::clamp(t, std::isinf(lo) ? t : lo, std::isinf(hi) ? t : hi);
    }
    // Linear piece: slope >= 0 here. Zero slope means the whole piece is
    // minimal and we take its left end (ties resolve to the smallest value).
    if (p.b == 0.0 && !std::isinf(p.lo)) return p.lo;
    if (p.b >= 0.0) return std::isinf(p.lo) ? 0.0 : p.lo;
  }
  throw std::runtime_error("PiecewiseQuadratic::argmin: no minimizer (function unbounded)");
}

void PiecewiseQuadratic::add_quadratic(double a, double b, double c) {
  require(a >= 0.0, "PiecewiseQuadratic: added quadratic must be convex");
  for (Piece& p : pieces_) {
    p.a += a;
    p.b += b;
    p.c += c;
  }
}

void PiecewiseQuadratic::prune() {
  // Merge adjacent pieces whose coefficients agree to relative 1e-12.
  std::vector<Piece> out;
  out.reserve(pieces_.size());
  for (const Piece& p : pieces_) {
    if (!out.empty()) {
      const Piece& q = out.back();
      double scale = std::max({1.0, std::fabs(q.a), std::fabs(q.b), std::fabs(q.c)});
      if (std::fabs(p.a - q.a) <= 1e-12 * scale &&
          std::fabs(p.b - q.b) <= 1e-12 * scale &&
          std::fabs(p.c - q.c) <= 1e-12 * scale) {
        continue;  // same polynomial, drop the breakpoint
      }
    }
    out.push_back(p);
  }
  pieces_ = std::move(out);
}

std::pair<double, double> PiecewiseQuadratic::clip_slope(double w) {
  require(w > 0.0, "PiecewiseQuadratic::clip_slope: slope bound must be positive");
  // Locate the unique crossings of the (strictly increasing) derivative with
  // -w and +w. Strict convexity of every piece is guaranteed by construction
  // in the solver: a fidelity quadratic is added before each clip.
  auto crossing = [&](double target) -> std::pair<double, std::size_t> {
    for (std::size_t j = 0; j < pieces_.size(); ++j) {
      const Piece& p = pieces_[j];
      require(p.a > 0.0, "PiecewiseQuadratic::clip_slope: needs strict convexity");
      double hi = j + 1 < pieces_.size() ? pieces_[j + 1].lo : kInf;
      double d_hi = std::isinf(hi) ? kInf : 2.0 * p.a * hi + p.b;
      if (d_hi < target) continue;
      double t = (target - p.b) / (2.0 * p.a);
      if (!std::isinf(p.lo)) t = std::max(t, p.lo);
      if (!std::isinf(hi)) t = std::min(t, hi);
      return {t, j};
    }
    throw std::runtime_error("PiecewiseQuadratic::clip_slope: derivative never reaches bound");
  };
  auto [t_lo, j_lo] = crossing(-w);
  auto [t_hi, j_hi] = crossing(+w);

  double f_lo = eval(t_lo), f_hi = eval(t_hi);
  std::vector<Piece> out;
  out.push_back({-kInf, 0.0, -w, f_lo + w * t_lo});
  for (std::size_t j = j_lo; j <= j_hi; ++j) {
    Piece p = pieces_[j];
    p.lo = std::max(p.lo, t_lo);
    double hi = j + 1 < pieces_.size() ? pieces_[j + 1].lo : kInf;
    if (std::min(hi, t_hi) - p.lo <= 0.0) continue;  // empty after clamping
    out.push_back(p);
  }
  out.push_back({t_hi, 0.0, w, f_hi - w * t_hi});
  pieces_ = std::move(out);
  prune();
  return {t_lo, t_hi};
}

void PiecewiseQuadratic::piece(std::size_t j, double& lo, double& a, double& b,
                               double& c) const {
  const Piece& p = pieces_.at(j);
  lo = p.lo;
  a = p.a;
  b = p.b;
  c = p.c;
}

namespace {

void check_chain_inputs(const ScalarField& g, const std::vector<double>& w_edges,
                        const FidelityTerm& psi) {
  const Grid& grid = g.grid();
  require(grid.dimension() == 1, "solve_1d: requires a 1D grid");
  require(grid.boundary() == Boundary::neumann,
          "solve_1d: chain recursion requires Neumann boundaries");
  require(grid.same_layout(psi.grid()), "solve_1d: fidelity grid differs");
  require(w_edges.size() == std::size_t(std::max(0, grid.extent(0) - 1)),
          "solve_1d: need one weight per interior edge");
  for (double w : w_edges)
    require(w > 0.0 && std::isfinite(w), "solve_1d: edge weights must be positive");
}

double chain_energy(const ScalarField& g, const std::vector<double>& w_edges,
                    const FidelityTerm& psi, const std::vector<double>& u) {
  double h = g.grid().spacing(0);
  std::vector<double> terms;
  terms.reserve(2 * u.size());
  for (std::size_t i = 0; i < u.size(); ++i) terms.push_back(h * psi.psi(i, u[i]));
  for (std::size_t i = 0; i + 1 < u.size(); ++i)
    terms.push_back(w_edges[i] * std::fabs(u[i + 1] - u[i]));
  return pairwise_sum(terms);
}

Solution1D solve_quadratic_chain(const ScalarField& g,
                                 const std::vector<double>& w_edges,
                                 const FidelityTerm& psi) {
  int n = g.grid().extent(0);
  double h = g.grid().spacing(0);
  auto fidelity = [&](int i) {
    // h * (t - g_i)^2 / 2 as quadratic coefficients
    double gi = g.values()[i];
    return std::array<double, 3>{0.5 * h, -h * gi, 0.5 * h * gi * gi};
  };
  auto f0 = fidelity(0);
  PiecewiseQuadratic V(f0[0], f0[1], f0[2]);
  std::vector<double> lo(std::max(0, n - 1)), hi(std::max(0, n - 1));
  for (int i = 0; i + 1 < n; ++i) {
    auto [tl, th] = V.clip_slope(w_edges[i]);
    lo[i] = tl;
    hi[i] = th;
    auto f = fidelity(i + 1);
    V.add_quadratic(f[0], f[1], f[2]);
  }
  Solution1D sol;
  sol.u.resize(n);
  sol.u[n - 1] = V.argmin();
  for (int i = n - 2; i >= 0; --i)
    sol.u[i] = std::clamp(sol.u[i + 1], lo[i], hi[i]);
  sol.energy = chain_energy(g, w_edges, psi, sol.u);
  return sol;
}

// Chain recursion for general strictly convex fidelity. The derivative of the
// value function after cell i is
//   d_i(t) = h dPsi(x_i, t) + clamp(d_{i-1}(t), -w_{i-1}, +w_{i-1})
// and is evaluated by walking backwards until a clamp saturates. The stored
// thresholds (points where d_i reaches -w_i / +w_i) make the saturation test
// a pair of comparisons per level.
class GenericChain {
 public:
  GenericChain(const ScalarField& g, const std::vector<double>& w,
               const FidelityTerm& psi)
      : g_(g), w_(w), psi_(psi), h_(g.grid().spacing(0)) {
    lo_.assign(w.size(), -kInf);
    hi_.assign(w.size(), kInf);
    range_lo_ = g.min();
    range_hi_ = g.max();
    tol_ = 1e-12 * std::max(1.0, range_hi_ - range_lo_);
  }

  Solution1D run() {
    int n = g_.grid().extent(0);
    for (int i = 0; i + 1 < n; ++i) {
      lo_[i] = threshold(i, -w_[i]);
      hi_[i] = threshold(i, +w_[i]);
    }
    Solution1D sol;
    sol.u.resize(n);
    sol.u[n - 1] = threshold(n - 1, 0.0);
    for (int i = n - 2; i >= 0; --i)
      sol.u[i] = std::clamp(sol.u[i + 1], lo_[i], hi_[i]);
    sol.energy = chain_energy(g_, w_, psi_, sol.u);
    return sol;
  }

 private:
  double deriv(int i, double t) const {
    double d = h_ * psi_.dpsi(std::size_t(i), t);
    for (int j = i - 1; j >= 0; --j) {
      if (t <= lo_[j]) return d - w_[j];
      if (t >= hi_[j]) return d + w_[j];
      d += h_ * psi_.dpsi(std::size_t(j), t);
    }
    return d;
  }

  // Smallest t with deriv(i, t) >= target, located by expanding the bracket
  // around the data range and bisecting.
  double threshold(int i, double target) {
    double span = std::max(1.0, range_hi_ - range_lo_);
    double lo = range_lo_ - span, hi = range_hi_ + span;
    for (int k = 0; k < 200 && deriv(i, lo) > target; ++k) lo -= span *= 2.0;
    span = std::max(1.0, range_hi_ - range_lo_);
    for (int k = 0; k < 200 && deriv(i, hi) < target; ++k) hi += span *= 2.0;
    require(deriv(i, lo) <= target && deriv(i, hi) >= target,
            "solve_1d: derivative bracket search failed");
    while (hi - lo > tol_) {
      double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      if (deriv(i, mid) < target)
        lo = mid;
      else
        hi = mid;
    }
    return 0.5 * (lo + hi);
  }

  const ScalarField& g_;
  const std::vector<double>& w_;
  const FidelityTerm& psi_;
  double h_;
  std::vector<double> lo_, hi_;
  double range_lo_, range_hi_, tol_;
};

}  // namespace

Solution1D solve_1d_exact(const ScalarField& g, const std::vector<double>& w_edges,
                          const FidelityTerm& psi) {
  check_chain_inputs(g, w_edges, psi);
  if (psi.kind() == FidelityKind::quadratic)
    return solve_quadratic_chain(g, w_edges, psi);
  return GenericChain(g, w_edges, psi).run();
}

Solution1D brute_force_1d(const ScalarField& g, const std::vector<double>& w_edges,
                          const FidelityTerm& psi,
                          const std::vector<double>& value_grid) {
  check_chain_inputs(g, w_edges, psi);
  int n = g.grid().extent(0);
  require(n <= 6, "brute_force_1d: limited to n <= 6 cells");
  require(!value_grid.empty() && value_grid.size() <= 64,
          "brute_force_1d: value grid must have between 1 and 64 entries");
  double h = g.grid().spacing(0);

  std::vector<int> pick(n, 0), best_pick;
  std::vector<double> partial(n + 1, 0.0);
  double best = kInf;
  // Depth-first enumeration with running partial energy; exhaustive, no
  // pruning, so the result is the true minimum over the quantized lattice.
  int depth = 0;
  std::vector<int> cursor(n, 0);
  while (depth >= 0) {
    if (cursor[depth] == int(value_grid.size())) {
      cursor[depth] = 0;
      --depth;
      if (depth >= 0) ++cursor[depth];
      continue;
    }
    double v = value_grid[cursor[depth]];
    double e = partial[depth] + h * psi.psi(std::size_t(depth), v);
    if (depth > 0)
      e += w_edges[depth - 1] * std::fabs(v - value_grid[cursor[depth - 1]]);
    partial[depth + 1] = e;
    if (depth == n - 1) {
      if (e < best) {
        best = e;
        best_pick = cursor;
      }
      ++cursor[depth];
    } else {
      ++depth;
      cursor[depth] = 0;
    }
  }
  Solution1D sol;
  sol.u.resize(n);
  for (int i = 0; i < n; ++i) sol.u[i] = value_grid[best_pick[i]];
  sol.energy = chain_energy(g, w_edges, psi, sol.u);
  return sol;
}

std::vector<FlatZone> flat_zone_report(const ScalarField& u, double tol) {
  require(u.grid().dimension() == 1, "flat_zone_report: requires a 1D field");
  require(tol >= 0.0, "flat_zone_report: tolerance must be >= 0");
  const std::vector<double>& v = u.values();
  int n = int(v.size());
  double h = u.grid().spacing(0);
  std::vector<FlatZone> zones;
  int start = 0;
  for (int i = 0; i < n; ++i) {
    bool flat_edge = i + 1 < n && std::fabs(v[i + 1] - v[i]) <= tol;
    if (!flat_edge) {
      if (i > start) {
        FlatZone z;
        z.begin = start;
        z.end = i;
        double s = 0.0;
        for (int k = start; k <= i; ++k) s += v[k];
        z.level = s / double(i - start + 1);
        z.extent = double(i - start + 1) * h;
        zones.push_back(z);
      }
      start = i + 1;
    }
  }
  return zones;
}

}  // namespace wtv
