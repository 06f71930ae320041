#pragma once

#include <cstddef>
#include <span>

namespace spinphoton {

// Pairwise (cascade) summation. Error grows like O(log n) in ulps instead of
// O(n), which keeps quadrature sums reproducible to ~1e-15 relative no matter
// how the terms were ordered upstream.
inline double pairwise_sum(std::span<const double> v) {
  constexpr std::size_t block = 32;
  const std::size_t n = v.size();
  if (n <= block) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

/// Kahan compensated accumulator for incremental sums inside loops.
class kahan_sum {
 public:
  void add(double x) {
    const double y = x - c_;
    const double t = s_ + y;
    c_ = (t - s_) - y;
    s_ = t;
  }
  double value() const { return s_; }

 private:
  double s_ = 0.0;
  double c_ = 0.0;
};

}  // namespace spinphoton
