#include "spinphoton/transition.hpp"

#include <cmath>

namespace spinphoton {

void transition_query::validate() const {
  if (hbar <= 0.0) throw std::domain_error("transition: hbar must be > 0");
  if (X.grid() != Z.grid())
    throw config_error("transition: X and Z must share a grid");
  if (std::abs(a.norm() - 1.0) > 1e-12 || std::abs(b.norm() - 1.0) > 1e-12)
    throw config_error("transition: spin states must be unit norm");
}

double coherent_overlap(const phase_point& X, const phase_point& Z,
                        double hbar) {
  if (hbar <= 0.0) throw std::domain_error("coherent_overlap: hbar must be > 0");
  const phase_point d = X - Z;
  return std::exp(-inner(d, d) / (4.0 * hbar));
}

namespace {
double bound_from_difference(const phase_point& d, double t, double hbar,
                             const spin_system& sys,
                             const radial_cutoff& cutoff, int n_time) {
  const double q = qt_form(fmap(d), t, sys, cutoff, n_time);
  return std::exp(0.5 * std::sqrt(q)) * std::exp(-inner(d, d) / (4.0 * hbar));
}
}  // namespace

double transition_bound(const transition_query& q, const spin_system& sys,
                        const radial_cutoff& cutoff, int n_time) {
  q.validate();
  const phase_point d = q.X - free_evolve(q.Z, -q.t);  // chi_t^{-1} Z
  return bound_from_difference(d, q.t, q.hbar, sys, cutoff, n_time);
}

double transition_bound_reversed(const transition_query& q,
                                 const spin_system& sys,
                                 const radial_cutoff& cutoff, int n_time) {
  q.validate();
  const phase_point d = q.X - free_evolve(q.Z, q.t);  // chi_t Z
  return bound_from_difference(d, q.t, q.hbar, sys, cutoff, n_time);
}

}  // namespace spinphoton
