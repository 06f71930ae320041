#pragma once

#include <Eigen/Dense>
#include <memory>
#include <vector>

#include "spinphoton/common.hpp"

namespace spinphoton {

using vec3 = Eigen::Vector3d;

/// Parameters of the radial Gauss-Legendre rule on [0, max_r].
struct radial_spec {
  int n_radial = 40;
  double max_r = 8.0;
};

/// Parameters of the product angular rule: Gauss-Legendre in cos(theta)
/// times a uniform (periodic trapezoid) rule in phi.
struct angular_spec {
  int n_polar = 12;
  int n_azimuth = 24;
};

/// Quadrature discretization of photon momentum space.
///
/// Nodes k_n = r_i * khat_a with weights w_n = r_i^2 w_i^rad w_a^ang, so that
/// sum_n w_n f(k_n) approximates the R^3 integral of a smooth rapidly
/// decaying f. Every node carries a deterministic orthonormal transverse
/// frame (e1, e2) with e1 x e2 = khat. Gauss-Legendre nodes are interior, so
/// k = 0 never appears and khat is well defined everywhere.
class kgrid {
 public:
  static std::shared_ptr<const kgrid> build(const radial_spec& rad,
                                            const angular_spec& ang);

  /// Grid from an explicit node list (benchmark mode sets, single-mode
  /// configurations). Weights are taken as given.
  static std::shared_ptr<const kgrid> from_nodes(
      const std::vector<vec3>& nodes, const std::vector<double>& weights);

  std::size_t size() const { return k_.size(); }

  const vec3& k(std::size_t n) const { return k_[n]; }
  double omega(std::size_t n) const { return omega_[n]; }  // |k_n|
  double weight(std::size_t n) const { return w_[n]; }
  const vec3& khat(std::size_t n) const { return khat_[n]; }
  const vec3& e1(std::size_t n) const { return e1_[n]; }
  const vec3& e2(std::size_t n) const { return e2_[n]; }

  const std::vector<double>& weights() const { return w_; }
  const std::vector<double>& omegas() const { return omega_; }

  /// Radial nodes of the underlying 1-d rule (empty for from_nodes grids).
  const std::vector<double>& radial_nodes() const { return radial_nodes_; }

  const radial_spec& radial() const { return rad_; }
  const angular_spec& angular() const { return ang_; }

 private:
  kgrid() = default;

  radial_spec rad_{0, 0.0};
  angular_spec ang_{0, 0};
  std::vector<vec3> k_;
  std::vector<vec3> khat_;
  std::vector<double> omega_;
  std::vector<double> w_;
  std::vector<vec3> e1_;
  std::vector<vec3> e2_;
  std::vector<double> radial_nodes_;
};

using grid_ptr = std::shared_ptr<const kgrid>;

/// Transverse frame at a unit direction: Gram-Schmidt of the Cartesian axis
/// with the smallest |khat| component, then e2 = khat x e1.
std::pair<vec3, vec3> transverse_frame(const vec3& khat);

}  // namespace spinphoton
