#pragma once

#include <complex>
#include <vector>

#include "spinphoton/bloch.hpp"
#include "spinphoton/field_symbols.hpp"

namespace spinphoton {

/// Quadrature setup shared by the order-hbar correction integrals: radial
/// 1-d rule on [0, max_r] and the node count for inner time integrals.
struct radiative_context {
  radial_cutoff cutoff;
  double max_r = 8.0;
  int n_radial = 512;
  int n_time = 64;
};

/// rho(x) = (2 pi)^{-3} int |chi(|k|)|^2 cos(k.x) dk, reduced to the radial
/// integral with a sinc kernel.
double rho(const vec3& x, const radiative_context& ctx);

/// d rho / d|x|; the gradient is rho'(|x|) xhat and vanishes at x = 0.
double rho_radial_derivative(double dist, const radiative_context& ctx);

/// u(x, t, omega): the retarded kernel driven by e^{-i omega t} rho(x).
/// Satisfies (d^2/dt^2 - Laplacian) u = e^{-i omega t} rho(x) with
/// u = du/dt = 0 at t = 0. The s-integral is done analytically
/// (product-to-sum); t < 0 raises std::domain_error.
std::complex<double> u_kernel(const vec3& x, double t, double omega,
                              const radiative_context& ctx);

/// Same value with the inner s-integral done by quadrature; consistency
/// oracle for the analytic path.
std::complex<double> u_kernel_numeric_s(const vec3& x, double t, double omega,
                                        const radiative_context& ctx,
                                        int n_s = 256);

/// Laplacian of u at x = 0, from the analytic differentiation under the
/// integral: -(2 pi)^{-3} int |chi|^2 |k| sin(|k|(t-s)) e^{-i omega s} dk ds.
std::complex<double> laplacian_u_origin(double t, double omega,
                                        const radiative_context& ctx);

/// First-order current density J^1(x, t, X=0): per particle, the 3x4 real
/// coefficient block over the operator basis {I, sigma_1, sigma_2, sigma_3}
/// (rows = spatial components).
struct current_density {
  std::vector<Eigen::Matrix<double, 3, 4>> coeff;  // one block per particle
};

current_density current_j1(const vec3& x, const rotation_state& rot,
                           const spin_system& sys,
                           const radiative_context& ctx);

/// First-order field B^1(0, t, 0) for a single particle at the origin in
/// B_ext = (0, 0, Bmag): a triple of Hermitian 2x2 matrices.
spin_symbol b1_field_origin(double t, double bmag,
                            const radiative_context& ctx);

/// Mizrahi-term scalars. phi0/phi3 use the analytic s-integral; the
/// *_numeric_s variants keep the quadrature path as an oracle.
double phi0(double t, double bmag, const radiative_context& ctx);
double phi3(double t, double bmag, const radiative_context& ctx);
double phi0_numeric_s(double t, double bmag, const radiative_context& ctx,
                      int n_s = 256);
double phi3_numeric_s(double t, double bmag, const radiative_context& ctx,
                      int n_s = 256);

/// (cos(theta t) - 1)/theta^2 with the removable singularity at theta = 0
/// handled by a two-term Taylor switch below |theta| = 1e-4.
double resonance_weight(double theta, double t);

enum class spin_start { up, down };  // initial spin state (1,0) or (0,1)

/// First-order z spin average <S_3^{[1]}(t, 0) a, a>. For a = (1,0):
///   (8/3)(2 pi)^{-3} int |chi|^2 |k| (cos((|k|-2B)t) - 1)/(|k|-2B)^2 dk,
/// nonpositive for all t. The spin-down variant flips the resonance to
/// |k| + 2B (no crossing) and the overall sign.
double s1_third(double t, double bmag, const radiative_context& ctx,
                spin_start a = spin_start::up);

/// K^{[3]}(t, V) = 2 (B_{2,0,t}.V, -B_{1,0,t}.V, 0).
vec3 k3_kernel(double t, const phase_point& V, const radial_cutoff& cutoff);

/// K^{[j]}(t, V) = 2 B^free(0, t, V) x c_j(t) with c_j the j-th column of
/// the leading-order rotation (z rotation by 2 Bmag t).
vec3 k_kernel(int j, double t, const phase_point& V, double bmag,
              const radial_cutoff& cutoff);

/// H^{[j]}(t, V): the z-rotation convolution int_0^t Rz(2B(t-s)) K^{[j]}(s, V) ds.
vec3 h_kernel(int j, double t, const phase_point& V, double bmag,
              const radial_cutoff& cutoff, int n_time = 64);

/// G^{[3]}(t) assembled from h_kernel contractions against B_{j,0,t};
/// equals (0, 0, phi3(t)).
vec3 g3_coefficient(double t, double bmag, const grid_ptr& grid,
                    const radiative_context& ctx);

struct f_pair {
  vec3 f0 = vec3::Zero();
  vec3 f3 = vec3::Zero();
};

/// F^{[j]}(t) = (0, 0, 2 int_0^t Phi_j(s) ds) for j = 0 and j = 3.
f_pair f_coefficients(double t, double bmag, const radiative_context& ctx);

/// Sampled correction curves for the CLI and regression outputs.
struct correction_series {
  std::vector<double> t;
  std::vector<double> phi0;
  std::vector<double> phi3;
  std::vector<double> f3_z;
  std::vector<double> s1_z;
  double bmag = 0.0;
};

correction_series sample_corrections(const std::vector<double>& times,
                                     double bmag,
                                     const radiative_context& ctx);

}  // namespace spinphoton
