#pragma once

#include <array>

#include "spinphoton/cutoff.hpp"
#include "spinphoton/phase_point.hpp"
#include "spinphoton/spin_system.hpp"

namespace spinphoton {

/// A magnetic or electric mode coefficient is an ordinary phase point
/// (complex node amplitudes split into (q, p)).
using field_coefficient = phase_point;

enum class field_kind { magnetic, electric };

/// Magnetic coefficient vector: node amplitude
///   i chi(|k|) |k|^{1/2} (2 pi)^{-3/2} e^{-i k.x} (khat x e_j),
/// transverse by construction. j is the Cartesian component index 1..3.
field_coefficient bmode(int j, const vec3& x, const grid_ptr& grid,
                        const radial_cutoff& cutoff);

/// Electric coefficient: helicity image of the magnetic one.
field_coefficient emode(int j, const vec3& x, const grid_ptr& grid,
                        const radial_cutoff& cutoff);

/// Scalar amplitude prefactor chi(r) sqrt(r) (2 pi)^{-3/2}.
double mode_amplitude(double r, const radial_cutoff& cutoff);

/// B_j^free(x, t, X): the free-evolved magnetic symbol paired with X.
/// Evaluated through the explicit cos/sin integral; equals
/// inner(bmode(j, x), free_evolve(X, t)), which tests cross-check.
double b_free(int j, const vec3& x, double t, const phase_point& X,
              const radial_cutoff& cutoff);

/// E_j^free(x, t, X), same conventions.
double e_free(int j, const vec3& x, double t, const phase_point& X,
              const radial_cutoff& cutoff);

/// Polarized free symbol ((Pi_+ - Pi_-) coefficient) . chi_t(X).
double pol_free(field_kind kind, int j, const vec3& x, double t,
                const phase_point& X, const radial_cutoff& cutoff);

/// Lag correlator of magnetic coefficients at a common point:
/// B_{m,x,t} . B_{n,x,s}. Zero for m != n; for m = n reduces to the
/// radial integral (2/3)(2pi)^{-3} 4pi int r^3 chi^2 cos(r (t-s)) dr,
/// evaluated with a 1-d rule of n_radial_1d nodes.
double mode_correlator(int m, int n, const vec3& x, double t, double s,
                       const radial_cutoff& cutoff, double max_r = 8.0,
                       int n_radial_1d = 512);

/// Q_t(V) = 2^N |t| sum_lambda sum_j int_0^t |B_j^free(x_lambda, s, V)|^2 ds.
/// For t < 0 the integral runs over [t, 0], keeping the form nonnegative.
double qt_form(const phase_point& V, double t, const spin_system& sys,
               const radial_cutoff& cutoff, int n_time = 64);

/// Precomputed evaluator for the free fields of a fixed (x, X) pair.
/// Collapses each b_free/e_free evaluation to one sin/cos pass over the
/// nodes; this is what the Bloch integrator drives its field samples with.
class free_field_probe {
 public:
  free_field_probe(const vec3& x, const phase_point& X,
                   const radial_cutoff& cutoff);

  vec3 b(double t) const;   // (B_1, B_2, B_3)^free(x, t, X)
  vec3 e(double t) const;   // (E_1, E_2, E_3)^free(x, t, X)
  vec3 db_dt(double t) const;  // exact time derivative of b()

 private:
  std::size_t n_;
  std::vector<double> phase0_;  // k.x per node
  std::vector<double> omega_;
  // per node and component: weighted bmode pairings and plain field samples
  std::array<std::vector<double>, 3> bq_, bp_;  // w A (v_j.q), w A (v_j.p)
  std::array<std::vector<double>, 3> eq_, ep_;  // w A q_j, w A p_j
};

}  // namespace spinphoton
