#include "wtv/solver2d.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "wtv/util.hpp"

namespace wtv {

double gradient_norm_bound(const Grid& grid) {
  double s = 0.0;
  for (int axis = 0; axis < grid.dimension(); ++axis)
    s += 4.0 / (grid.spacing(axis) * grid.spacing(axis));
  return std::sqrt(s);
}

VectorField project_dual(const VectorField& z, const FinslerIntegrand& phi) {
  const Grid& g = z.grid();
  require(g.same_layout(phi.grid()), "project_dual: grids differ");
  VectorField out = z;
  int n0 = g.extent(0), n1 = g.dimension() == 2 ? g.extent(1) : 1;
  for (int i0 = 0; i0 < n0; ++i0)
    for (int i1 = 0; i1 < n1; ++i1) {
      bool has0 = i0 < g.edge_extent(0);
      bool has1 = g.dimension() == 2 && i1 < g.edge_extent(1);
      if (!has0 && !has1) continue;
      std::array<double, 2> q{has0 ? z.value(0, i0, i1) : 0.0,
                              has1 ? z.value(1, i0, i1) : 0.0};
      auto p = phi.project_polar_cell(i0, i1, q);
      if (has0) out.value(0, i0, i1) = p[0];
      if (has1) out.value(1, i0, i1) = p[1];
    }
  return out;
}

namespace {

double dual_objective(const VectorField& z, const FidelityTerm& psi) {
  ScalarField d = divergence(z);
  std::vector<double> terms(d.values().size());
  for (std::size_t k = 0; k < terms.size(); ++k)
    terms[k] = -psi.conjugate(k, d.values()[k]);
  return d.grid().cell_measure() * pairwise_sum(terms);
}

void check_dual_feasible(const VectorField& z, const FinslerIntegrand& phi) {
  const Grid& g = z.grid();
  int n0 = g.extent(0), n1 = g.dimension() == 2 ? g.extent(1) : 1;
  for (int i0 = 0; i0 < n0; ++i0)
    for (int i1 = 0; i1 < n1; ++i1) {
      std::array<double, 2> q{
          i0 < g.edge_extent(0) ? z.value(0, i0, i1) : 0.0,
          g.dimension() == 2 && i1 < g.edge_extent(1) ? z.value(1, i0, i1) : 0.0};
      double p = phi.polar_cell(i0, i1, q);
      if (p > 1.0 + 1e-9) {
        char msg[128];
        std::snprintf(msg, sizeof msg,
                      "certify: dual field infeasible, polar = %.12g at (%d, %d)",
                      p, i0, i1);
        throw std::invalid_argument(msg);
      }
    }
}

}  // namespace

Certificate certify(const ScalarField& u, const VectorField& z,
                    const FinslerIntegrand& phi, const FidelityTerm& psi) {
  require(u.grid().same_layout(z.grid()) && u.grid().same_layout(phi.grid()) &&
              u.grid().same_layout(psi.grid()),
          "certify: grids differ");
  check_dual_feasible(z, phi);
  Certificate c;
  c.primal = total_energy(u, phi, psi).total;
  c.dual = dual_objective(z, psi);
  c.gap = c.primal - c.dual;
  return c;
}

Solution2D solve_pd(const FinslerIntegrand& phi, const FidelityTerm& psi,
                    const SolverParams& params) {
  const Grid& g = phi.grid();
  require(g.same_layout(psi.grid()), "solve_pd: grids differ");
  require(params.max_iters >= 1, "solve_pd: max_iters must be positive");
  require(params.gap_tol > 0.0, "solve_pd: gap_tol must be positive");
  require(params.theta >= 0.0 && params.theta <= 1.0,
          "solve_pd: theta must lie in [0, 1]");
  require(params.checkpoint_every >= 1, "solve_pd: checkpoint_every must be >= 1");

  double L = gradient_norm_bound(g);
  double tau = params.tau > 0.0 ? params.tau : 1.0 / L;
  double sigma = params.sigma > 0.0 ? params.sigma : 1.0 / L;
  require(tau * sigma * L * L <= 1.0 + 1e-12,
          "solve_pd: step sizes violate tau * sigma * L^2 <= 1");

  ScalarField u = params.init ? *params.init : psi.datum();
  require(u.grid().same_layout(g), "solve_pd: init field grid differs");
  ScalarField ubar = u;
  VectorField z(g, 0.0);

  bool accelerated = params.accelerate && psi.strong_convexity() > 0.0;
  double gamma = psi.strong_convexity();
  double theta = params.theta;

  Solution2D best{u, z, {}};
  SolverReport& rep = best.report;
  double best_primal = total_energy(u, phi, psi).total;
  double best_dual = dual_objective(z, psi);
  best.u = u;
  best.z = z;

  auto checkpoint = [&](int iter) {
    for (double v : u.values())
      if (!std::isfinite(v)) {
        char msg[96];
        std::snprintf(msg, sizeof msg,
                      "solve_pd: iterate became non-finite at iteration %d", iter);
        throw std::runtime_error(msg);
      }
    double primal = total_energy(u, phi, psi).total;
    if (primal < best_primal) {
      best_primal = primal;
      best.u = u;
    }
    double dual = dual_objective(z, psi);
    if (dual > best_dual) {
      best_dual = dual;
      best.z = z;
    }
    double gap = best_primal - best_dual;
    rep.history.push_back({iter, best_primal, best_dual, gap});
    return gap <= params.gap_tol * (1.0 + std::fabs(best_primal));
  };

  int n0 = g.extent(0), n1 = g.dimension() == 2 ? g.extent(1) : 1;
  int iter = 0;
  bool done = checkpoint(0);
  VectorField grad_bar(g);
  ScalarField div_z(g, 0.0);
  bool quad = psi.kind() == FidelityKind::quadratic;
  const std::vector<double>& datum = psi.datum().values();
  while (!done && iter < params.max_iters) {
    ++iter;
    // Dual ascent on the overrelaxed iterate, then projection. Buffers are
    // reused across iterations; this loop dominates large-grid solve times.
    gradient(ubar, grad_bar);
    for (int axis = 0; axis < g.dimension(); ++axis) {
      auto& zc = z.component(axis);
      const auto& gc = grad_bar.component(axis);
      for (std::size_t k = 0; k < zc.size(); ++k) zc[k] += sigma * gc[k];
    }
    for (int i0 = 0; i0 < n0; ++i0)
      for (int i1 = 0; i1 < n1; ++i1) {
        bool has0 = i0 < g.edge_extent(0);
        bool has1 = g.dimension() == 2 && i1 < g.edge_extent(1);
        if (!has0 && !has1) continue;
        std::array<double, 2> q{has0 ? z.value(0, i0, i1) : 0.0,
                                has1 ? z.value(1, i0, i1) : 0.0};
        auto p = phi.project_polar_cell(i0, i1, q);
        if (has0) z.value(0, i0, i1) = p[0];
        if (has1) z.value(1, i0, i1) = p[1];
      }

    // Primal descent through the fidelity prox.
    divergence(z, div_z);
    double th = theta;
    if (accelerated) {
      th = 1.0 / std::sqrt(1.0 + 2.0 * gamma * tau);
    }
    for (std::size_t k = 0; k < u.values().size(); ++k) {
      double prev = u.values()[k];
      double stepped = prev + tau * div_z.values()[k];
      double next = quad ? (stepped + tau * datum[k]) / (1.0 + tau)
                         : psi.prox(k, stepped, tau);
      u.values()[k] = next;
      ubar.values()[k] = next + th * (next - prev);
    }
    if (accelerated) {
      tau *= th;
      sigma /= th;
    }
    if (iter % params.checkpoint_every == 0 || iter == params.max_iters)
      done = checkpoint(iter);
  }

  rep.converged = done;
  rep.iters = iter;
  rep.primal = best_primal;
  rep.dual = best_dual;
  rep.gap = best_primal - best_dual;
  rep.energy = total_energy(best.u, phi, psi);
  return best;
}

}  // namespace wtv
