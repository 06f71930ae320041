#pragma once

#include "spinphoton/field_symbols.hpp"
#include "spinphoton/spin_algebra.hpp"

namespace spinphoton {

/// Inputs of a transition-probability bound evaluation.
struct transition_query {
  phase_point X;
  phase_point Z;
  double t = 0.0;
  double hbar = 1.0;
  cvec a;  // initial spin state, unit norm
  cvec b;  // final spin state, unit norm

  void validate() const;
};

/// Coherent overlap modulus |<Psi_X, Psi_Z>| = e^{-|X - Z|^2 / 4 hbar}.
double coherent_overlap(const phase_point& X, const phase_point& Z,
                        double hbar);

/// Upper bound on the transition amplitude modulus:
///   e^{(1/2) Q_t(F(D))^{1/2}} e^{-|D|^2/(4 hbar)},  D = X - chi_t^{-1}(Z).
/// This controls |< e^{-i t H / hbar} (Psi_X (x) a), Psi_Z (x) b >|; the
/// amplitude with the opposite evolution sign is controlled by the same
/// expression with chi_t^{-1} replaced by chi_t (see transition_bound_reversed).
double transition_bound(const transition_query& q, const spin_system& sys,
                        const radial_cutoff& cutoff, int n_time = 64);

/// The chi_t-flipped variant bounding the e^{+i t H / hbar} amplitude.
double transition_bound_reversed(const transition_query& q,
                                 const spin_system& sys,
                                 const radial_cutoff& cutoff, int n_time = 64);

}  // namespace spinphoton
