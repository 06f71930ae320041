#include "spinphoton/spin_algebra.hpp"

#include "spinphoton/common.hpp"

namespace spinphoton {

Eigen::Matrix2cd pauli(int m) {
  using namespace std::complex_literals;
  Eigen::Matrix2cd s;
  switch (m) {
    case 1:
      s << 0, 1, 1, 0;
      break;
    case 2:
      s << 0, -1i, 1i, 0;
      break;
    case 3:
      s << 1, 0, 0, -1;
      break;
    default:
      throw config_error("pauli: component must be 1..3");
  }
  return s;
}

cmat pauli_embedded(int m, int lambda, int n_particles) {
  if (lambda < 1 || lambda > n_particles)
    throw config_error("pauli_embedded: particle index out of range");
  // Kronecker chain, leftmost factor = particle 1 (most significant bit).
  cmat acc = cmat::Identity(1, 1);
  for (int f = 1; f <= n_particles; ++f) {
    const cmat factor =
        (f == lambda) ? cmat(pauli(m)) : cmat(cmat::Identity(2, 2));
    cmat next(acc.rows() * 2, acc.cols() * 2);
    for (Eigen::Index i = 0; i < acc.rows(); ++i)
      for (Eigen::Index j = 0; j < acc.cols(); ++j)
        next.block(2 * i, 2 * j, 2, 2) = acc(i, j) * factor;
    acc = std::move(next);
  }
  return acc;
}

std::complex<double> sandwich(const cmat& M, const cvec& a) {
  return a.dot(M * a);  // Eigen dot conjugates the left argument
}

}  // namespace spinphoton
