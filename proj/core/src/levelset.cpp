#include "wtv/levelset.hpp"

#include <algorithm>
#include <cmath>

#include "maxflow.hpp"
#include "wtv/util.hpp"

namespace wtv {

BinaryField superlevel(const ScalarField& u, double t) {
  BinaryField e(u.grid());
  const auto& v = u.values();
  for (std::size_t k = 0; k < v.size(); ++k) e.values()[k] = v[k] > t ? 1 : 0;
  return e;
}

double weighted_perimeter(const BinaryField& e, const FinslerIntegrand& phi) {
  return anisotropic_tv(e.to_scalar(), phi);
}

double geometric_energy(const BinaryField& e, const FinslerIntegrand& phi,
                        const FidelityTerm& psi, double t) {
  const Grid& g = e.grid();
  require(g.same_layout(psi.grid()), "geometric_energy: grids differ");
  double per = weighted_perimeter(e, phi);
  std::vector<double> terms;
  terms.reserve(e.popcount());
  for (std::size_t k = 0; k < e.values().size(); ++k)
    if (e.values()[k]) terms.push_back(psi.dpsi(k, t));
  return per + g.cell_measure() * pairwise_sum(terms);
}

BinaryField mincut_solve(const FinslerIntegrand& phi, const FidelityTerm& psi,
                         double t) {
  const Grid& g = phi.grid();
  require(g.same_layout(psi.grid()), "mincut_solve: grids differ");
  require(g.cell_count() <= 512u * 512u, "mincut_solve: grid too large (512x512 max)");
  require(phi.kind() != AnisotropyKind::elliptic,
          "mincut_solve: needs a scalar-weight integrand");
  require(g.dimension() == 1 || phi.norm() == GradientNorm::manhattan,
          "mincut_solve: 2D requires manhattan assembly (cut metric)");

  int n0 = g.extent(0), n1 = g.dimension() == 2 ? g.extent(1) : 1;
  int cells = int(g.cell_count());
  int source = cells, sink = cells + 1;
  detail::MaxFlow mf(cells + 2);

  auto cell_id = [&](int i0, int i1) { return int(g.index(i0, i1)); };

  // Grid edges: cutting the edge separates the indicator values, which costs
  // weight * cell_measure / spacing (the transverse extent of the interface).
  for (int axis = 0; axis < g.dimension(); ++axis) {
    double cap_scale = g.cell_measure() / g.spacing(axis);
    int n = g.extent(axis);
    for (int i0 = 0; i0 < n0; ++i0)
      for (int i1 = 0; i1 < n1; ++i1) {
        int ia = axis == 0 ? i0 : i1;
        if (ia >= g.edge_extent(axis)) continue;
        int j0 = axis == 0 ? (i0 + 1) % n : i0;
        int j1 = axis == 1 ? (i1 + 1) % n : i1;
        double cap = phi.edge_weight(axis, i0, i1) * cap_scale;
        mf.add_edge(cell_id(i0, i1), cell_id(j0, j1), cap, cap);
      }
  }

  // Terminal edges encode the signed per-cell cost f = dPsi(x, t) * measure
  // of membership in E: positive cost connects to the sink (cut if the cell
  // joins E), negative to the source.
  double m = g.cell_measure();
  for (int i0 = 0; i0 < n0; ++i0)
    for (int i1 = 0; i1 < n1; ++i1) {
      double f = psi.dpsi(g.index(i0, i1), t) * m;
      if (f > 0.0)
        mf.add_edge(cell_id(i0, i1), sink, f, 0.0);
      else if (f < 0.0)
        mf.add_edge(source, cell_id(i0, i1), -f, 0.0);
    }

  mf.run(source, sink);
  const auto& in_source = mf.min_cut_source_side();
  BinaryField e(g);
  for (int i0 = 0; i0 < n0; ++i0)
    for (int i1 = 0; i1 < n1; ++i1)
      e.set(i0, i1, in_source[cell_id(i0, i1)] != 0);
  return e;
}

ScalarField LevelSetFamily::reconstruct() const {
  require(!levels.empty() && levels.size() == sets.size(),
          "LevelSetFamily::reconstruct: empty or inconsistent family");
  const Grid& g = sets.front().grid();
  ScalarField v(g, levels.front());
  for (std::size_t k = 0; k < levels.size(); ++k) {
    require(sets[k].grid().same_layout(g),
            "LevelSetFamily::reconstruct: sets on different grids");
    for (std::size_t c = 0; c < v.values().size(); ++c)
      if (sets[k].values()[c]) v.values()[c] = std::max(v.values()[c], levels[k]);
  }
  return v;
}

LevelSetFamily superlevel_family(const ScalarField& u,
                                 const std::vector<double>& levels) {
  LevelSetFamily fam;
  fam.levels = levels;
  fam.sets.reserve(levels.size());
  for (double t : levels) fam.sets.push_back(superlevel(u, t));
  return fam;
}

LevelSetFamily mincut_family(const FinslerIntegrand& phi, const FidelityTerm& psi,
                             const std::vector<double>& levels) {
  LevelSetFamily fam;
  fam.levels = levels;
  fam.sets.reserve(levels.size());
  for (double t : levels) fam.sets.push_back(mincut_solve(phi, psi, t));
  return fam;
}

LevelSetReport verify_levelset_characterization(const ScalarField& u,
                                                const FinslerIntegrand& phi,
                                                const FidelityTerm& psi,
                                                const std::vector<double>& levels) {
  LevelSetReport rep;
  rep.checks.reserve(levels.size());
  for (double t : levels) {
    LevelCheck c;
    c.level = t;
    BinaryField sup = superlevel(u, t);
    BinaryField cut = mincut_solve(phi, psi, t);
    c.energy_superlevel = geometric_energy(sup, phi, psi, t);
    c.energy_mincut = geometric_energy(cut, phi, psi, t);
    c.slack = c.energy_superlevel - c.energy_mincut;
    c.sets_equal = sup == cut;
    for (double v : u.values())
      if (std::fabs(v - t) < 1e-4) {
        c.tie_prone = true;
        break;
      }
    rep.max_slack_all = std::max(rep.max_slack_all, c.slack);
    if (!c.tie_prone) {
      rep.max_slack = std::max(rep.max_slack, c.slack);
      rep.all_sets_equal = rep.all_sets_equal && c.sets_equal;
    }
    rep.checks.push_back(c);
  }
  return rep;
}

std::vector<NestingViolation> check_nested(const LevelSetFamily& family) {
  require(family.levels.size() == family.sets.size(),
          "check_nested: inconsistent family");
  for (std::size_t k = 1; k < family.levels.size(); ++k)
    require(family.levels[k] > family.levels[k - 1],
            "check_nested: levels must be strictly increasing");
  std::vector<NestingViolation> out;
  for (std::size_t k = 1; k < family.sets.size(); ++k) {
    const auto& lower = family.sets[k - 1].values();
    const auto& upper = family.sets[k].values();
    std::size_t bad = 0;
    for (std::size_t c = 0; c < lower.size(); ++c)
      if (upper[c] && !lower[c]) ++bad;
    if (bad > 0) out.push_back({k - 1, k, bad});
  }
  return out;
}

}  // namespace wtv
