#pragma once

#include "spinphoton/bloch.hpp"
#include "spinphoton/field_symbols.hpp"

namespace spinphoton {

/// Narrowband polarized coherent-field construction: support confined to the
/// shell ||k| - nu| < eps, node amplitudes in the chosen circular
/// polarization subspace.
struct narrowband_spec {
  double nu = 1.0;         // center frequency, > 0
  double eps = 0.1;        // half width, > 0
  polarization sign = polarization::plus;
  double amplitude = 1.0;
  enum class profile { uniform, sin_polar } angular = profile::uniform;
};

/// Raised-cosine radial bump on [nu - eps, nu + eps] carried by the node
/// frames: q = f e1, p = -+ f e2 (plus/minus polarization). Throws
/// config_error when the grid has fewer than 3 radial nodes inside the
/// shell, with a hint for the required n_radial.
phase_point make_narrowband(const narrowband_spec& spec, const grid_ptr& grid);

/// Leading-order photon-number rate: the spin-space operator
/// N^{[0]}(t, X) = -sum_lambda sum_j E_j^{pol,free}(x_lambda, t, X)
///                  S_j^{[lambda,0]}(t, X).
cmat n0_rate(double t, const phase_point& X, const spin_system& sys,
             const rotation_state& rot, const radial_cutoff& cutoff);

/// max_j | d/dt B_j^free(x, t, X) - (+-) nu E_j^free(x, t, X) | for a
/// narrowband X polarized with the given sign. The derivative uses the
/// exact per-node formula, not finite differences.
double field_time_derivative_check(const vec3& x, double t,
                                   const phase_point& X, polarization sign,
                                   double nu, const radial_cutoff& cutoff);

/// Magnitude of d/dt [ N + (1/nu) sum_lambda S^{[lambda,0]} . (B_ext +
/// B^free) ] at order hbar^0: the rate from n0_rate plus the
/// finite-difference derivative of the spin-field bracket. The polarization
/// of X enters through the rate's polarized field. `a` is the unit spin
/// state used for the sandwiches; `rk_dt` the Bloch integrator step.
double energy_balance_residual(const spin_system& sys, const phase_point& X,
                               double nu, double t, double fd_dt,
                               const cvec& a, const radial_cutoff& cutoff,
                               double rk_dt = 5e-4);

}  // namespace spinphoton
