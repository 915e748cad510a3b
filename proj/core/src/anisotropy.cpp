#include "wtv/anisotropy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "wtv/util.hpp"

namespace wtv {

namespace {

std::size_t edge_linear_index(const Grid& g, int axis, int i0, int i1) {
  if (g.dimension() == 1) return std::size_t(i0);
  int cols = axis == 0 ? g.extent(1) : g.edge_extent(1);
  return std::size_t(i0) * std::size_t(cols) + std::size_t(i1);
}

bool edge_exists(const Grid& g, int axis, int i0, int i1) {
  int ia = axis == 0 ? i0 : i1;
  return ia < g.edge_extent(axis);
}

// Index of the forward edge at (i0, i1), clamped into range so pointwise
// evaluation stays total at Neumann boundary cells.
std::size_t edge_linear_index_clamped(const Grid& g, int axis, int i0, int i1) {
  int last = g.edge_extent(axis) - 1;
  if (axis == 0)
    i0 = std::min(i0, last);
  else
    i1 = std::min(i1, last);
  return edge_linear_index(g, axis, i0, i1);
}

// Inverse of [[a11,a12],[a12,a22]] applied as a quadratic form q' A^{-1} q.
double inv_quadratic_form(double a11, double a12, double a22, double q0,
                          double q1) {
  double det = a11 * a22 - a12 * a12;
  return (a22 * q0 * q0 - 2.0 * a12 * q0 * q1 + a11 * q1 * q1) / det;
}

}  // namespace

FinslerIntegrand::FinslerIntegrand(const Grid& grid, AnisotropyKind kind,
                                   GradientNorm norm)
    : grid_(grid), kind_(kind), norm_(norm) {}

FinslerIntegrand FinslerIntegrand::isotropic(const Grid& grid, GradientNorm norm) {
  FinslerIntegrand phi(grid, AnisotropyKind::isotropic, norm);
  phi.growth_ = (norm == GradientNorm::manhattan && grid.dimension() == 2)
                    ? std::sqrt(2.0)
                    : 1.0;
  return phi;
}

FinslerIntegrand FinslerIntegrand::weighted_constant(const Grid& grid, double w,
                                                     GradientNorm norm) {
  double c = w;
  return weighted(grid, [c](double, double) { return c; }, norm);
}

FinslerIntegrand FinslerIntegrand::weighted(const Grid& grid, const WeightFn& w,
                                            GradientNorm norm) {
  FinslerIntegrand phi(grid, AnisotropyKind::weighted, norm);
  phi.weight_fn_ = w;
  for (int axis = 0; axis < grid.dimension(); ++axis) {
    phi.edge_w_[axis].resize(grid.edge_count(axis));
    int n0 = axis == 0 ? grid.edge_extent(0) : grid.extent(0);
    int n1 = grid.dimension() == 1 ? 1
             : (axis == 0 ? grid.extent(1) : grid.edge_extent(1));
    for (int i0 = 0; i0 < n0; ++i0)
      for (int i1 = 0; i1 < n1; ++i1) {
        double x0 = axis == 0 ? grid.edge_coord(0, i0 % grid.extent(0))
                              : grid.coord(0, i0);
        double x1 = grid.dimension() == 1
                        ? 0.0
                        : (axis == 1 ? grid.edge_coord(1, i1 % grid.extent(1))
                                     : grid.coord(1, i1));
        phi.edge_w_[axis][edge_linear_index(grid, axis, i0, i1)] = w(x0, x1);
      }
  }
  phi.finalize_weighted();
  return phi;
}

FinslerIntegrand FinslerIntegrand::weighted_field(const ScalarField& w,
                                                  GradientNorm norm) {
  const Grid& grid = w.grid();
  FinslerIntegrand phi(grid, AnisotropyKind::weighted, norm);
  for (int axis = 0; axis < grid.dimension(); ++axis) {
    phi.edge_w_[axis].resize(grid.edge_count(axis));
    int n0 = axis == 0 ? grid.edge_extent(0) : grid.extent(0);
    int n1 = grid.dimension() == 1 ? 1
             : (axis == 0 ? grid.extent(1) : grid.edge_extent(1));
    for (int i0 = 0; i0 < n0; ++i0)
      for (int i1 = 0; i1 < n1; ++i1) {
        int j0 = axis == 0 ? (i0 + 1) % grid.extent(0) : i0;
        int j1 = axis == 1 ? (i1 + 1) % grid.extent(1) : i1;
        double mid = 0.5 * (w(i0, i1) + w(j0, j1));
        phi.edge_w_[axis][edge_linear_index(grid, axis, i0, i1)] = mid;
      }
  }
  phi.finalize_weighted();
  return phi;
}

FinslerIntegrand FinslerIntegrand::elliptic(const Grid& grid, double w,
                                            std::array<double, 3> A) {
  ScalarField wf(grid, w), a11(grid, A[0]), a12(grid, A[1]), a22(grid, A[2]);
  return elliptic_fields(wf, a11, a12, a22);
}

FinslerIntegrand FinslerIntegrand::elliptic_fields(const ScalarField& w,
                                                   const ScalarField& a11,
                                                   const ScalarField& a12,
                                                   const ScalarField& a22) {
  const Grid& grid = w.grid();
  require(grid.dimension() == 2, "elliptic anisotropy requires a 2D grid");
  require(a11.grid().same_layout(grid) && a12.grid().same_layout(grid) &&
              a22.grid().same_layout(grid),
          "elliptic anisotropy: matrix fields must share the weight's grid");
  FinslerIntegrand phi(grid, AnisotropyKind::elliptic, GradientNorm::euclidean);
  phi.ell_w_ = w.values();
  phi.ell_a11_ = a11.values();
  phi.ell_a12_ = a12.values();
  phi.ell_a22_ = a22.values();
  phi.finalize_elliptic();
  return phi;
}

void FinslerIntegrand::finalize_weighted() {
  double wmin = std::numeric_limits<double>::infinity(), wmax = 0.0;
  for (int axis = 0; axis < grid_.dimension(); ++axis)
    for (double v : edge_w_[axis]) {
      require(std::isfinite(v) && v > 0.0,
              "weighted anisotropy: weight samples must be positive and finite");
      wmin = std::min(wmin, v);
      wmax = std::max(wmax, v);
    }
  if (!std::isfinite(wmin)) {  // grid with no live edges
    wmin = wmax = 1.0;
  }
  double upper = wmax;
  if (norm_ == GradientNorm::manhattan && grid_.dimension() == 2)
    upper *= std::sqrt(2.0);
  growth_ = std::max({1.0, upper, 1.0 / wmin});

  // Cell weights for euclidean assembly: mean of the live forward edges.
  cell_w_.assign(grid_.cell_count(), 1.0);
  int n0 = grid_.extent(0), n1 = grid_.dimension() == 2 ? grid_.extent(1) : 1;
  for (int i0 = 0; i0 < n0; ++i0)
    for (int i1 = 0; i1 < n1; ++i1) {
      double sum = 0.0;
      int cnt = 0;
      for (int axis = 0; axis < grid_.dimension(); ++axis)
        if (edge_exists(grid_, axis, i0, i1)) {
          sum += edge_w_[axis][edge_linear_index(grid_, axis, i0, i1)];
          ++cnt;
        }
      if (cnt > 0) cell_w_[grid_.index(i0, i1)] = sum / double(cnt);
    }
}

void FinslerIntegrand::finalize_elliptic() {
  double cmax = 1.0;
  for (std::size_t i = 0; i < ell_w_.size(); ++i) {
    double w = ell_w_[i], a = ell_a11_[i], b = ell_a12_[i], c = ell_a22_[i];
    require(std::isfinite(w) && w > 0.0,
            "elliptic anisotropy: weight samples must be positive");
    double det = a * c - b * b;
    require(a > 0.0 && det > 0.0,
            "elliptic anisotropy: matrix samples must be positive definite");
    double mean = 0.5 * (a + c);
    double rad = std::sqrt(std::max(0.0, mean * mean - det));
    double lmax = mean + rad, lmin = mean - rad;
    cmax = std::max({cmax, w * std::sqrt(lmax), 1.0 / (w * std::sqrt(lmin))});
  }
  growth_ = cmax;
}

void FinslerIntegrand::set_holder_beta(double beta) {
  require(beta > 0.0 && beta <= 1.0, "holder exponent must lie in (0, 1]");
  holder_beta_ = beta;
}

double FinslerIntegrand::edge_weight(int axis, int i0, int i1) const {
  require(kind_ != AnisotropyKind::elliptic,
          "edge_weight: elliptic anisotropy has no scalar edge weights");
  if (kind_ == AnisotropyKind::isotropic) return 1.0;
  require(edge_exists(grid_, axis, i0, i1), "edge_weight: no such edge");
  return edge_w_[axis][edge_linear_index(grid_, axis, i0, i1)];
}

double FinslerIntegrand::cell_weight(int i0, int i1) const {
  if (kind_ == AnisotropyKind::isotropic) return 1.0;
  require(kind_ == AnisotropyKind::weighted,
          "cell_weight: defined for scalar-weight kinds only");
  return cell_w_[grid_.index(i0, i1)];
}

void FinslerIntegrand::cell_matrix(int i0, int i1, double& w, double& a11,
                                   double& a12, double& a22) const {
  require(kind_ == AnisotropyKind::elliptic, "cell_matrix: not elliptic");
  std::size_t k = grid_.index(i0, i1);
  w = ell_w_[k];
  a11 = ell_a11_[k];
  a12 = ell_a12_[k];
  a22 = ell_a22_[k];
}

double FinslerIntegrand::weight_at(double x0, double x1) const {
  require(bool(weight_fn_), "weight_at: no analytic weight available");
  return weight_fn_(x0, x1);
}

double FinslerIntegrand::phi_cell(int i0, int i1, std::array<double, 2> p) const {
  switch (kind_) {
    case AnisotropyKind::isotropic:
      return norm_ == GradientNorm::manhattan
                 ? std::fabs(p[0]) + std::fabs(p[1])
                 : std::hypot(p[0], p[1]);
    case AnisotropyKind::weighted: {
      if (norm_ == GradientNorm::manhattan) {
        double s = 0.0;
        for (int axis = 0; axis < grid_.dimension(); ++axis) {
          if (p[axis] == 0.0) continue;
          s += edge_w_[axis][edge_linear_index_clamped(grid_, axis, i0, i1)] *
               std::fabs(p[axis]);
        }
        return s;
      }
      return cell_w_[grid_.index(i0, i1)] * std::hypot(p[0], p[1]);
    }
    case AnisotropyKind::elliptic: {
      double w, a, b, c;
      cell_matrix(i0, i1, w, a, b, c);
      double q = a * p[0] * p[0] + 2.0 * b * p[0] * p[1] + c * p[1] * p[1];
      return w * std::sqrt(std::max(0.0, q));
    }
  }
  return 0.0;
}

double FinslerIntegrand::polar_cell(int i0, int i1, std::array<double, 2> q) const {
  switch (kind_) {
    case AnisotropyKind::isotropic:
      return norm_ == GradientNorm::manhattan
                 ? std::max(std::fabs(q[0]), std::fabs(q[1]))
                 : std::hypot(q[0], q[1]);
    case AnisotropyKind::weighted: {
      if (norm_ == GradientNorm::manhattan) {
        double m = 0.0;
        for (int axis = 0; axis < grid_.dimension(); ++axis) {
          if (q[axis] == 0.0) continue;
          double w = edge_w_[axis][edge_linear_index_clamped(grid_, axis, i0, i1)];
          m = std::max(m, std::fabs(q[axis]) / w);
        }
        return m;
      }
      return std::hypot(q[0], q[1]) / cell_w_[grid_.index(i0, i1)];
    }
    case AnisotropyKind::elliptic: {
      double w, a, b, c;
      cell_matrix(i0, i1, w, a, b, c);
      double f = inv_quadratic_form(a, b, c, q[0], q[1]);
      return std::sqrt(std::max(0.0, f)) / w;
    }
  }
  return 0.0;
}

std::array<double, 2> FinslerIntegrand::project_polar_cell(
    int i0, int i1, std::array<double, 2> q) const {
  switch (kind_) {
    case AnisotropyKind::isotropic:
    case AnisotropyKind::weighted: {
      if (norm_ == GradientNorm::manhattan) {
        // Clamp against the same (boundary-clamped) edge weights polar_cell
        // evaluates, so the projection targets exactly { polar <= 1 }.
        std::array<double, 2> z = q;
        for (int axis = 0; axis < grid_.dimension(); ++axis) {
          double w = kind_ == AnisotropyKind::isotropic
                         ? 1.0
                         : edge_w_[axis][edge_linear_index_clamped(grid_, axis,
                                                                   i0, i1)];
          z[axis] = std::clamp(q[axis], -w, w);
        }
        return z;
      }
      double w = kind_ == AnisotropyKind::isotropic ? 1.0
                                                    : cell_w_[grid_.index(i0, i1)];
      double n = std::hypot(q[0], q[1]);
      if (n <= w) return q;
      double s = w / n;
      return {q[0] * s, q[1] * s};
    }
    case AnisotropyKind::elliptic: {
      // Feasible set { z : z' A^{-1} z <= w^2 }. With M = A^{-1} / w^2 the
      // projection is z = (I + mu M)^{-1} q where mu >= 0 makes z' M z = 1
      // when the constraint is active.
      double w, a, b, c;
      cell_matrix(i0, i1, w, a, b, c);
      double det = a * c - b * b;
      double w2 = w * w;
      double m11 = c / (det * w2), m12 = -b / (det * w2), m22 = a / (det * w2);
      auto form = [&](double z0, double z1) {
        return m11 * z0 * z0 + 2.0 * m12 * z0 * z1 + m22 * z1 * z1;
      };
      if (form(q[0], q[1]) <= 1.0) return q;
      auto solve = [&](double mu, double& z0, double& z1) {
        double s11 = 1.0 + mu * m11, s12 = mu * m12, s22 = 1.0 + mu * m22;
        double d = s11 * s22 - s12 * s12;
        z0 = (s22 * q[0] - s12 * q[1]) / d;
        z1 = (s11 * q[1] - s12 * q[0]) / d;
      };
      double lo = 0.0, hi = 1.0, z0, z1;
      solve(hi, z0, z1);
      while (form(z0, z1) > 1.0) {
        lo = hi;
        hi *= 2.0;
        solve(hi, z0, z1);
        require(hi < 1e30, "project_polar_cell: bracket search failed");
      }
      // Safeguarded Newton on f(mu) = z(mu)' M z(mu) - 1, decreasing in mu.
      double mu = 0.5 * (lo + hi);
      for (int it = 0; it < 200; ++it) {
        solve(mu, z0, z1);
        double f = form(z0, z1) - 1.0;
        if (std::fabs(f) <= 1e-12) break;
        if (f > 0.0)
          lo = mu;
        else
          hi = mu;
        // df/dmu = -2 z' M (I + mu M)^{-1} M z
        double g0 = m11 * z0 + m12 * z1, g1 = m12 * z0 + m22 * z1;
        double y0, y1;
        {
          double s11 = 1.0 + mu * m11, s12 = mu * m12, s22 = 1.0 + mu * m22;
          double d = s11 * s22 - s12 * s12;
          y0 = (s22 * g0 - s12 * g1) / d;
          y1 = (s11 * g1 - s12 * g0) / d;
        }
        double df = -2.0 * (g0 * y0 + g1 * y1);
        double step = df != 0.0 ? mu - f / df : mu;
        mu = (step > lo && step < hi) ? step : 0.5 * (lo + hi);
      }
      solve(mu, z0, z1);
      return {z0, z1};
    }
  }
  return q;
}

}  // namespace wtv
