#pragma once

#include <functional>
#include <vector>

#include "spinphoton/field_symbols.hpp"
#include "spinphoton/spin_algebra.hpp"
#include "spinphoton/spin_system.hpp"

namespace spinphoton {

using mat3 = Eigen::Matrix3d;

/// Per-particle rotation matrices R_lambda(t); the leading-order spin symbol
/// is S_m = sum_n (R_lambda)_{mn} sigma_n^{[lambda]}.
struct rotation_state {
  double t = 0.0;
  std::vector<mat3> r;  // one per particle

  double orthogonality_residual() const;
};

struct bloch_trajectory {
  std::vector<rotation_state> samples;

  const rotation_state& at_time(double t, double tol = 1e-9) const;
};

/// Field drive: returns the transverse magnetic field seen by particle
/// lambda (0-based) at time t.
using field_drive = std::function<vec3(int lambda, double t)>;

/// Drive built from the free field of the phase point X on its grid.
field_drive drive_from_phase_point(const spin_system& sys,
                                   const phase_point& X,
                                   const radial_cutoff& cutoff);

/// Integrate dR/dt = 2 (B_ext + B_drive(t)) x R column-wise from R(0) = I
/// with fixed-step RK4 and sample at the requested times. The rotation is
/// re-orthogonalized by polar decomposition every `reortho_every` steps;
/// drift beyond `drift_tol` before correction raises numeric_error.
bloch_trajectory bloch_evolve(const spin_system& sys, const field_drive& drive,
                              const std::vector<double>& sample_times,
                              double dt, int reortho_every = 1000,
                              double drift_tol = 1e-9);

/// Convenience overload: X = phase-space point on a grid.
bloch_trajectory bloch_evolve(const spin_system& sys, const phase_point& X,
                              const radial_cutoff& cutoff, double t_final,
                              double dt, int n_samples = 2);

/// Leading-order spin symbol of particle lambda (1-based) at the state's
/// time stamp: component m = sum_n R_{mn} sigma_n^{[lambda]}.
spin_symbol spin_symbol0(const rotation_state& rot, int lambda,
                         int n_particles);

/// Classical Bloch vectors: dS/dt = 2 (B_ext + B_drive) x S per particle.
/// Returns the per-particle vectors at the sample times.
std::vector<std::vector<vec3>> bloch_vector(
    const spin_system& sys, const field_drive& drive,
    const std::vector<vec3>& s0, const std::vector<double>& sample_times,
    double dt);

}  // namespace spinphoton
