#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>

namespace spinphoton {

using cmat = Eigen::MatrixXcd;
using cvec = Eigen::VectorXcd;

/// Pauli matrix sigma_m, m in 1..3.
Eigen::Matrix2cd pauli(int m);

/// sigma_m acting on particle lambda (1-based) inside the 2^N spin space:
/// I (x) ... sigma_m ... (x) I with the factor at position lambda.
cmat pauli_embedded(int m, int lambda, int n_particles);

/// Operator-valued observable symbol: a triple of Hermitian spin matrices,
/// one per spatial component.
struct spin_symbol {
  std::array<cmat, 3> comp;

  const cmat& operator[](int m) const { return comp[m]; }  // 0-based
  cmat& operator[](int m) { return comp[m]; }

  double hermiticity_residual() const {
    double worst = 0.0;
    for (const auto& c : comp)
      worst = std::max(worst, (c - c.adjoint()).cwiseAbs().maxCoeff());
    return worst;
  }
};

/// <M a, a> for a unit spin vector a (real for Hermitian M up to roundoff).
std::complex<double> sandwich(const cmat& M, const cvec& a);

}  // namespace spinphoton
