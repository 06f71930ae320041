#pragma once

#include <Eigen/Dense>
#include <complex>
#include <random>

#include "spinphoton/grid.hpp"

namespace spinphoton {

enum class polarization : int { plus = +1, minus = -1 };

/// A field phase-space point: per-node transverse pairs (q_n, p_n) in
/// R^3 x R^3 on a shared momentum grid. Under the complex identification
/// the node amplitude is q + i p, which is how field coefficients such as
/// the magnetic mode functions are stored as well.
class phase_point {
 public:
  /// Zero point on a grid.
  explicit phase_point(grid_ptr grid);

  /// Construct from per-node data, enforcing transversality: throws
  /// numeric_error if any node violates k.q = k.p = 0 beyond tol.
  static phase_point transverse(grid_ptr grid, Eigen::Matrix3Xd q,
                                Eigen::Matrix3Xd p, double tol = 1e-12);

  /// Random transverse point with i.i.d. normal components projected onto
  /// the transverse plane of each node. Test helper.
  static phase_point random(grid_ptr grid, std::mt19937& rng,
                            double sigma = 1.0);

  const grid_ptr& grid() const { return grid_; }
  std::size_t size() const { return static_cast<std::size_t>(q_.cols()); }

  // Mutable access is limited to construction helpers; operations below are
  // pure and return new points.
  const Eigen::Matrix3Xd& q() const { return q_; }
  const Eigen::Matrix3Xd& p() const { return p_; }
  Eigen::Vector3d q(std::size_t n) const { return q_.col(n); }
  Eigen::Vector3d p(std::size_t n) const { return p_.col(n); }

  void set_node(std::size_t n, const vec3& qn, const vec3& pn) {
    q_.col(n) = qn;
    p_.col(n) = pn;
  }

  std::complex<double> amplitude(std::size_t n, int comp) const {
    return {q_(comp, n), p_(comp, n)};
  }

  phase_point operator+(const phase_point& o) const;
  phase_point operator-(const phase_point& o) const;
  phase_point operator*(double c) const;
  phase_point operator-() const { return *this * -1.0; }

  /// Largest per-node transversality violation max(|k.q|, |k.p|)/|k|.
  double transversality_residual() const;

 private:
  grid_ptr grid_;
  Eigen::Matrix3Xd q_;
  Eigen::Matrix3Xd p_;
};

/// Real scalar product sum_n w_n (q_n.q'_n + p_n.p'_n). Pairwise-summed.
double inner(const phase_point& x, const phase_point& y);

inline double norm2(const phase_point& x) { return inner(x, x); }

/// Helicity operator J: (q, p) -> (khat x q, khat x p). On transverse
/// points J.J = -Id and J is an isometry.
phase_point helicity(const phase_point& x);

/// Circular polarization projector. plus selects the subspace where
/// k x q = -|k| p, minus the one with k x q = +|k| p.
phase_point polar_project(const phase_point& x, polarization sign);

/// Free field flow: node amplitude (q + ip) -> e^{-i t |k|} (q + ip).
phase_point free_evolve(const phase_point& x, double t);

/// The symplectic rotation (q, p) -> (-p, q); multiplication by i in the
/// complex identification.
phase_point fmap(const phase_point& x);

}  // namespace spinphoton
