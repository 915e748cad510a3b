#include "wtv/energy.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>

#include "wtv/util.hpp"

namespace wtv {

namespace {

// Forward difference of u at (i0, i1) along `axis`; zero across a Neumann
// boundary, wrapping for periodic grids.
inline double forward_diff(const ScalarField& u, int axis, int i0, int i1) {
  const Grid& g = u.grid();
  int n = g.extent(axis);
  int ia = axis == 0 ? i0 : i1;
  if (ia == n - 1) {
    if (g.boundary() == Boundary::neumann) return 0.0;
    int j0 = axis == 0 ? 0 : i0;
    int j1 = axis == 1 ? 0 : i1;
    return (u(j0, j1) - u(i0, i1)) / g.spacing(axis);
  }
  int j0 = axis == 0 ? i0 + 1 : i0;
  int j1 = axis == 1 ? i1 + 1 : i1;
  return (u(j0, j1) - u(i0, i1)) / g.spacing(axis);
}

}  // namespace

double anisotropic_tv(const ScalarField& u, const FinslerIntegrand& phi) {
  const Grid& g = u.grid();
  require(g.same_layout(phi.grid()),
          "anisotropic_tv: field and integrand grids differ");
  int n0 = g.extent(0), n1 = g.dimension() == 2 ? g.extent(1) : 1;
  std::vector<double> terms(g.cell_count(), 0.0);
  for (int i0 = 0; i0 < n0; ++i0)
    for (int i1 = 0; i1 < n1; ++i1) {
      std::array<double, 2> grad{forward_diff(u, 0, i0, i1), 0.0};
      if (g.dimension() == 2) grad[1] = forward_diff(u, 1, i0, i1);
      terms[g.index(i0, i1)] = phi.phi_cell(i0, i1, grad);
    }
  return g.cell_measure() * pairwise_sum(terms);
}

EnergyBreakdown total_energy(const ScalarField& u, const FinslerIntegrand& phi,
                             const FidelityTerm& psi) {
  require(u.grid().same_layout(psi.grid()),
          "total_energy: field and fidelity grids differ");
  EnergyBreakdown e;
  e.tv = anisotropic_tv(u, phi);
  std::vector<double> terms(u.grid().cell_count());
  for (std::size_t k = 0; k < terms.size(); ++k)
    terms[k] = psi.psi(k, u.values()[k]);
  e.fidelity = u.grid().cell_measure() * pairwise_sum(terms);
  e.total = e.tv + e.fidelity;
  return e;
}

VectorField gradient(const ScalarField& u) {
  const Grid& g = u.grid();
  VectorField z(g);
  gradient(u, z);
  return z;
}

void gradient(const ScalarField& u, VectorField& out) {
  const Grid& g = u.grid();
  require(g.same_layout(out.grid()), "gradient: output grid differs");
  for (int axis = 0; axis < g.dimension(); ++axis) {
    int e0 = axis == 0 ? g.edge_extent(0) : g.extent(0);
    int e1 = g.dimension() == 1 ? 1
             : (axis == 0 ? g.extent(1) : g.edge_extent(1));
    for (int i0 = 0; i0 < e0; ++i0)
      for (int i1 = 0; i1 < e1; ++i1)
        out.value(axis, i0, i1) = forward_diff(u, axis, i0, i1);
  }
}

ScalarField divergence(const VectorField& z) {
  ScalarField d(z.grid(), 0.0);
  divergence(z, d);
  return d;
}

void divergence(const VectorField& z, ScalarField& out) {
  const Grid& g = z.grid();
  require(g.same_layout(out.grid()), "divergence: output grid differs");
  ScalarField& d = out;
  std::fill(d.values().begin(), d.values().end(), 0.0);
  int n0 = g.extent(0), n1 = g.dimension() == 2 ? g.extent(1) : 1;
  for (int axis = 0; axis < g.dimension(); ++axis) {
    int n = g.extent(axis);
    double h = g.spacing(axis);
    for (int i0 = 0; i0 < n0; ++i0)
      for (int i1 = 0; i1 < n1; ++i1) {
        int ia = axis == 0 ? i0 : i1;
        double zin, zout;  // edge entering the cell, edge leaving it
        if (g.boundary() == Boundary::periodic) {
          int p0 = axis == 0 ? (i0 + n - 1) % n : i0;
          int p1 = axis == 1 ? (i1 + n - 1) % n : i1;
          zin = z.value(axis, p0, p1);
          zout = z.value(axis, i0, i1);
        } else {
          zin = ia > 0 ? z.value(axis, axis == 0 ? i0 - 1 : i0,
                                 axis == 1 ? i1 - 1 : i1)
                       : 0.0;
          zout = ia < n - 1 ? z.value(axis, i0, i1) : 0.0;
        }
        d.at(i0, i1) += (zout - zin) / h;
      }
  }
}

double dual_lower_bound(const ScalarField& u, const VectorField& z,
                        const FinslerIntegrand& phi) {
  const Grid& g = u.grid();
  require(g.same_layout(z.grid()), "dual_lower_bound: grids differ");
  require(g.same_layout(phi.grid()), "dual_lower_bound: grids differ");
  int n0 = g.extent(0), n1 = g.dimension() == 2 ? g.extent(1) : 1;
  double worst = 0.0;
  int w0 = -1, w1 = -1;
  for (int i0 = 0; i0 < n0; ++i0)
    for (int i1 = 0; i1 < n1; ++i1) {
      std::array<double, 2> q{0.0, 0.0};
      for (int axis = 0; axis < g.dimension(); ++axis) {
        int ia = axis == 0 ? i0 : i1;
        if (ia < g.edge_extent(axis)) q[axis] = z.value(axis, i0, i1);
      }
      double p = phi.polar_cell(i0, i1, q);
      if (p - 1.0 > worst) {
        worst = p - 1.0;
        w0 = i0;
        w1 = i1;
      }
    }
  if (worst > 1e-9) {
    char msg[160];
    std::snprintf(msg, sizeof msg,
                  "dual_lower_bound: infeasible dual field, polar = 1 + %.3e "
                  "at cell (%d, %d)",
                  worst, w0, w1);
    throw std::invalid_argument(msg);
  }
  ScalarField d = divergence(z);
  std::vector<double> terms(g.cell_count());
  for (std::size_t k = 0; k < terms.size(); ++k)
    terms[k] = u.values()[k] * d.values()[k];
  return g.cell_measure() * pairwise_sum(terms);
}

double coarea_quadrature(const ScalarField& u, const FinslerIntegrand& phi,
                         const std::vector<double>& levels) {
  require(levels.size() >= 2, "coarea_quadrature: need at least two levels");
  for (std::size_t k = 1; k < levels.size(); ++k)
    require(levels[k] > levels[k - 1],
            "coarea_quadrature: levels must be strictly increasing");
  require(levels.front() <= u.min() && levels.back() >= u.max(),
          "coarea_quadrature: levels must bracket the range of u");
  const Grid& g = u.grid();
  std::vector<double> bands(levels.size() - 1);
  for (std::size_t k = 0; k + 1 < levels.size(); ++k) {
    double t = 0.5 * (levels[k] + levels[k + 1]);
    std::vector<double> ind(g.cell_count());
    for (std::size_t c = 0; c < ind.size(); ++c)
      ind[c] = u.values()[c] > t ? 1.0 : 0.0;
    ScalarField chi(g, std::move(ind));
    bands[k] = anisotropic_tv(chi, phi) * (levels[k + 1] - levels[k]);
  }
  return pairwise_sum(bands);
}

std::vector<double> exact_levels(const ScalarField& u) {
  std::set<double> vals(u.values().begin(), u.values().end());
  std::vector<double> levels(vals.begin(), vals.end());
  double lo = levels.front(), hi = levels.back();
  double pad = 0.5 * std::max(1e-6, hi - lo);
  levels.insert(levels.begin(), lo - pad);
  levels.push_back(hi + pad);
  return levels;
}

}  // namespace wtv
