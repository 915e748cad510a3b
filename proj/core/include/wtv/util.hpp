#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>

namespace wtv {

/// Deterministic pairwise-tree summation. Reproducible to the last bit for a
/// fixed input order and considerably more accurate than a running sum.
double pairwise_sum(std::span<const double> v);

/// Safeguarded bisection for a nondecreasing function f on [lo, hi].
/// Returns t with f(t) ~ target, |interval| shrunk below tol.
/// Throws std::invalid_argument if the bracket does not straddle the target.
double bisect_nondecreasing(const std::function<double(double)>& f,
                            double lo, double hi, double target, double tol);

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

inline bool close(double a, double b, double tol) { return std::fabs(a - b) <= tol; }

}  // namespace wtv
