#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "wtv/anisotropy.hpp"
#include "wtv/field.hpp"

namespace wtv {

/// Deterministic random source for synthetic instances. The same seed
/// reproduces the same instance on every platform (mt19937_64 semantics are
/// pinned by the standard).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
  }
  int uniform_int(int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(engine_);
  }
  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

/// Piecewise-constant field: up to max_values distinct levels quantized to
/// the grid {0, 1/64, ..., 1}, arranged in random axis-aligned blocks.
ScalarField random_piecewise_constant(const Grid& grid, int max_values,
                                      Rng& rng);

/// Smooth field: a short random trigonometric series resolved by the grid,
/// values roughly in [-1.5, 1.5].
ScalarField random_smooth(const Grid& grid, Rng& rng);

/// 1D staircase: monotone steps with random widths and rises, values in
/// [0, 1]. Useful for jump-persistence checks.
ScalarField random_staircase(const Grid& grid, int steps, Rng& rng);

std::vector<double> random_positive_weights(int count, double lo, double hi,
                                            Rng& rng);

/// Random SPD anisotropy with eigenvalues in [0.4, 2.5] and weight in
/// [0.05, 0.5].
FinslerIntegrand random_elliptic(const Grid& grid, Rng& rng);

/// Strictly feasible dual field: raw uniform components shrunk per cell to
/// polar norm <= margin (< 1).
VectorField random_dual_feasible(const FinslerIntegrand& phi, Rng& rng,
                                 double margin = 0.999);

}  // namespace wtv
