#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "spinphoton/bloch.hpp"
#include "spinphoton/field_symbols.hpp"

namespace spinphoton::fock {

using complexd = std::complex<double>;
using cvec3 = Eigen::Vector3cd;

/// A finite set of photon modes: grid nodes equipped with one circular
/// polarization each, quadrature weights, and the per-particle coupling
/// amplitudes g_{m,lambda,i} = <eps_i, B_{m,x_lambda}(k_i)> sampled from the
/// continuum coefficient vectors. Comparisons between the exact oracle and
/// the asymptotic formulas always use one of these on both sides, so the
/// discretization error cancels and only the hbar expansion is probed.
class discrete_mode_set {
 public:
  struct mode {
    vec3 k;
    double omega;
    double weight;
    polarization sign;
  };

  /// One standalone mode: wavevector omega * direction, explicit weight.
  static discrete_mode_set single_mode(double omega, double weight,
                                       const vec3& direction,
                                       polarization sign,
                                       const spin_system& sys,
                                       const radial_cutoff& cutoff);

  /// Every grid node with both circular polarizations: reproduces the grid
  /// inner product exactly.
  static discrete_mode_set from_grid(const grid_ptr& grid,
                                     const spin_system& sys,
                                     const radial_cutoff& cutoff);

  /// Only nodes inside the shell ||k| - nu| < eps, single polarization.
  static discrete_mode_set shell(const grid_ptr& grid, const spin_system& sys,
                                 const radial_cutoff& cutoff, double nu,
                                 double eps, polarization sign);

  int size() const { return static_cast<int>(modes_.size()); }
  const std::vector<mode>& modes() const { return modes_; }
  const mode& operator[](int i) const { return modes_[i]; }
  int n_particles() const { return static_cast<int>(g_.size()); }

  /// Coupling of component m (1..3) of particle lambda (1-based) to mode i.
  complexd coupling(int m, int lambda, int i) const {
    return g_[lambda - 1](m - 1, i);
  }

  /// Circular polarization vector of mode i.
  cvec3 eps(int i) const;

  /// Scalar mode amplitudes of a phase point living on the source grid.
  cvec amplitudes_of(const phase_point& x) const;

  /// Phase point with node values sum_i u_i eps_i (zero off the mode set).
  phase_point to_phase_point(const cvec& u) const;

  /// |X|^2 restricted to the modes: sum_i w_i |u_i|^2.
  double norm2(const cvec& u) const;

  /// Discrete field symbols at particle lambda (1-based):
  /// B_j^free = Re sum_i w_i conj(g) e^{-i omega t} u, and the electric and
  /// polarized-electric variants.
  double b_free(int j, int lambda, double t, const cvec& u) const;
  double e_free(int j, int lambda, double t, const cvec& u) const;
  double e_pol_free(int j, int lambda, double t, const cvec& u) const;

  /// Bloch drive sampling the discrete B^free.
  field_drive drive(const cvec& u) const;

  /// N^{[0]}(t, u) on the mode set (spin-space operator).
  cmat n0_rate(double t, const cvec& u, const spin_system& sys,
               const rotation_state& rot) const;

  /// First-order coefficient of <sigma_3>(t, X=0, hbar) for one particle at
  /// the origin in B_ext = (0,0,bmag): the mode-set specialization of the
  /// continuum radiative formula,
  ///   2 sum_i w_i |g_1 + i g_2|^2 (cos((2B - omega_i) t) - 1)/(2B - omega_i)^2.
  double first_order_sigma3(double bmag, double t) const;

  const spin_system& system() const { return sys_; }

 private:
  std::vector<mode> modes_;
  std::vector<Eigen::Matrix3Xcd> g_;  // per particle: 3 x M couplings
  grid_ptr grid_;                     // source grid when built from one
  std::vector<std::size_t> node_of_mode_;
  spin_system sys_;

  void add_mode(const vec3& k, double w, polarization sign,
                std::size_t node_index);
  void finalize_couplings(const radial_cutoff& cutoff);
};

/// Truncated bosonic occupancy basis: all tuples (n_1..n_M) with total
/// occupancy <= n_max, enumerated lexicographically (n_1 slowest), each
/// tensored with the 2^N spin basis. Global index = occ_index * 2^N + spin.
class fock_basis {
 public:
  fock_basis(int n_modes, int n_max, int n_particles,
             std::size_t dim_limit = 20000);

  int n_modes() const { return n_modes_; }
  int n_max() const { return n_max_; }
  int n_particles() const { return n_particles_; }
  int spin_dim() const { return 1 << n_particles_; }
  std::size_t occ_count() const { return occ_.size(); }
  std::size_t dim() const { return occ_.size() * spin_dim(); }

  const std::vector<int>& occupancy(std::size_t idx) const { return occ_[idx]; }
  /// Index of a tuple, or -1 when outside the truncation.
  long index_of(const std::vector<int>& occ) const;

  /// Dense annihilation operator for mode i on the occupancy space.
  cmat annihilator(int i) const;
  /// Total photon number operator (diagonal).
  cmat number_operator() const;

 private:
  int n_modes_, n_max_, n_particles_;
  std::vector<std::vector<int>> occ_;
  std::vector<long> lookup_;  // packed-key -> index
  long pack(const std::vector<int>& occ) const;
};

/// H(hbar) = hbar [ sum_i omega_i a_i^d a_i (x) I
///                  + sum_lambda sum_m (B_m^ext + Phi_m,lambda) (x) sigma_m ]
/// with Phi(f) = sqrt(hbar/2) sum_i sqrt(w_i)(conj(f_i) a_i + f_i a_i^d).
cmat assemble_hamiltonian(const discrete_mode_set& modes,
                          const spin_system& sys, double hbar,
                          const fock_basis& basis);

struct coherent_state {
  cvec amplitudes;        // occupancy-space vector, exact normalization
  double truncation_mass;  // 1 - |retained|^2
};

/// Coherent vector for mode amplitudes u: alpha_i = sqrt(w_i) u_i / sqrt(2 hbar).
coherent_state coherent_vector(const cvec& u, const discrete_mode_set& modes,
                               double hbar, const fock_basis& basis);

/// photon (x) spin tensor: index = occ * spin_dim + spin.
cvec tensor_with_spin(const cvec& photon, const cvec& spin);

/// Exact propagation e^{-i t H / hbar} psi0 via Hermitian eigendecomposition.
/// Dimensions above eig_limit fall back to a Lanczos (Krylov) propagator
/// with tolerance 1e-10.
cvec propagate(const cmat& h, const cvec& psi0, double t, double hbar,
               std::size_t eig_limit = 2000);

/// Eigendecomposition cache for repeated propagation of one Hamiltonian.
class spectral_propagator {
 public:
  explicit spectral_propagator(const cmat& h);
  cvec evolve(const cvec& psi0, double t, double hbar) const;

 private:
  Eigen::VectorXd evals_;
  cmat evecs_;
};

/// Wick-symbol matrix of an operator A at the coherent point u: the spin
/// matrix of sandwiches <Psi (x) e_r | A | Psi (x) e_c> with the normalized
/// truncated coherent vector.
cmat wick_symbol(const cmat& a, const cvec& u, const discrete_mode_set& modes,
                 double hbar, const fock_basis& basis);

struct observable_spec {
  enum class kind { spin, number } what = kind::spin;
  int lambda = 1;  // 1-based particle
  int m = 3;       // spin component 1..3

  static observable_spec spin(int lambda, int m) {
    return {kind::spin, lambda, m};
  }
  static observable_spec number() { return {kind::number, 1, 0}; }
};

struct oracle_result {
  std::vector<double> times;
  std::vector<double> values;
  double hbar = 0.0;
  double initial_truncation_mass = 0.0;
  double max_top_shell_mass = 0.0;  // worst norm on the top occupancy shell
  bool flagged = false;             // truncation drift above threshold
};

/// Heisenberg expectation of the observable along e^{-i t H/hbar}(Psi_u (x) a).
oracle_result observe_trajectory(const observable_spec& obs, const cvec& u,
                                 const cvec& spin_state,
                                 const discrete_mode_set& modes, double hbar,
                                 const std::vector<double>& times,
                                 const fock_basis& basis,
                                 double drift_threshold = 1e-6);

struct sweep_result {
  std::vector<double> hbars;
  std::vector<double> values;
  std::vector<double> truncation_masses;
  double c0 = 0.0;
  double c1 = 0.0;
  std::optional<double> c2;
  double fit_residual = 0.0;
  double order_estimate = 0.0;  // from log-log fit of |value - c0_ref|
  bool flagged = false;         // ill-conditioned fit
};

/// Evaluate the observable at fixed t for every hbar in the list (must be
/// >= 3 values, geometrically spaced) and least-squares fit
/// value = c0 + c1 hbar (+ c2 hbar^2 when fit_quadratic). The order
/// estimate uses c0_ref when given (e.g. the Bloch leading-order value),
/// otherwise the fitted c0.
sweep_result hbar_sweep(const observable_spec& obs, const cvec& u,
                        const cvec& spin_state,
                        const discrete_mode_set& modes,
                        const std::vector<double>& hbars, double t,
                        const fock_basis& basis, bool fit_quadratic = true,
                        std::optional<double> c0_ref = std::nullopt,
                        int threads = 1);

}  // namespace spinphoton::fock
