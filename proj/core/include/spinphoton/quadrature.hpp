#pragma once

#include <functional>
#include <vector>

namespace spinphoton {

/// One-dimensional quadrature rule: nodes and matching weights.
struct quad_rule {
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }
};

/// Gauss-Legendre rule with n nodes on [a, b]. Nodes are strictly interior.
quad_rule gauss_legendre(int n, double a, double b);

/// Composite Gauss-Legendre: [a, b] split into panels of a fixed-order rule
/// so that the total node count is at least n_min.
quad_rule composite_gauss_legendre(int n_min, double a, double b,
                                   int panel_order = 16);

/// Integrate f over [a, b] with a composite Gauss-Legendre rule.
double integrate(const std::function<double(double)>& f, double a, double b,
                 int n_min = 64);

}  // namespace spinphoton
