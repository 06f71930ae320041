#include "spinphoton/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "spinphoton/common.hpp"
#include "spinphoton/summation.hpp"

namespace spinphoton {

namespace {

// Gauss-Legendre on [-1, 1] by Newton iteration on P_n, seeded with the
// Chebyshev-like asymptotic roots. Standard construction, accurate to ~1 ulp.
quad_rule legendre_reference(int n) {
  quad_rule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      pp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * pp * pp);
    r.nodes[i] = -x;
    r.nodes[n - 1 - i] = x;
    r.weights[i] = w;
    r.weights[n - 1 - i] = w;
  }
  return r;
}

}  // namespace

quad_rule gauss_legendre(int n, double a, double b) {
  if (n < 1) throw config_error("gauss_legendre: need at least 1 node");
  const quad_rule ref = legendre_reference(n);
  quad_rule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  for (int i = 0; i < n; ++i) {
    r.nodes[i] = mid + half * ref.nodes[i];
    r.weights[i] = half * ref.weights[i];
  }
  return r;
}

quad_rule composite_gauss_legendre(int n_min, double a, double b,
                                   int panel_order) {
  if (n_min < 1 || panel_order < 1)
    throw config_error("composite_gauss_legendre: invalid node counts");
  const int panels = (n_min + panel_order - 1) / panel_order;
  quad_rule r;
  r.nodes.reserve(static_cast<std::size_t>(panels) * panel_order);
  r.weights.reserve(static_cast<std::size_t>(panels) * panel_order);
  const double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const quad_rule panel = gauss_legendre(panel_order, a + p * h, a + (p + 1) * h);
    r.nodes.insert(r.nodes.end(), panel.nodes.begin(), panel.nodes.end());
    r.weights.insert(r.weights.end(), panel.weights.begin(), panel.weights.end());
  }
  return r;
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 int n_min) {
  const quad_rule r = composite_gauss_legendre(n_min, a, b);
  std::vector<double> terms(r.size());
  for (std::size_t i = 0; i < r.size(); ++i)
    terms[i] = r.weights[i] * f(r.nodes[i]);
  return pairwise_sum(terms);
}

}  // namespace spinphoton
