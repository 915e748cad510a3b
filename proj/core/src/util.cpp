#include "wtv/util.hpp"

namespace wtv {

double pairwise_sum(std::span<const double> v) {
  if (v.size() <= 32) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  }
  std::size_t half = v.size() / 2;
  return pairwise_sum(v.subspan(0, half)) + pairwise_sum(v.subspan(half));
}

double bisect_nondecreasing(const std::function<double(double)>& f, double lo,
                            double hi, double target, double tol) {
  double flo = f(lo), fhi = f(hi);
  require(flo <= target && fhi >= target,
          "bisect_nondecreasing: bracket does not straddle the target");
  while (hi - lo > tol) {
    double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // interval at floating point resolution
    if (f(mid) < target)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace wtv
