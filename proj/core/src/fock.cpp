#include "spinphoton/fock.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <mutex>
#include <numbers>
#include <thread>

#include "spinphoton/radiative.hpp"
#include "spinphoton/summation.hpp"

namespace spinphoton::fock {

namespace {

using namespace std::complex_literals;

cvec3 circular_polarization(const vec3& e1, const vec3& e2,
                            polarization sign) {
  // eps_+ = (e1 - i e2)/sqrt2 spans E_+ at the node; eps_- the conjugate.
  const double s = (sign == polarization::plus) ? 1.0 : -1.0;
  return (e1.cast<complexd>() - s * 1i * e2.cast<complexd>()) / std::sqrt(2.0);
}

// photon (x) spin Kronecker block with photon-major index.
void add_kron(cmat& target, const cmat& ph, const cmat& sp, complexd scale) {
  const Eigen::Index sd = sp.rows();
  for (Eigen::Index i = 0; i < ph.rows(); ++i)
    for (Eigen::Index j = 0; j < ph.cols(); ++j) {
      const complexd c = scale * ph(i, j);
      if (c == complexd{0.0, 0.0}) continue;
      target.block(i * sd, j * sd, sd, sd) += c * sp;
    }
}

}  // namespace

// ---------------------------------------------------------------------------
// discrete_mode_set

void discrete_mode_set::add_mode(const vec3& k, double w, polarization sign,
                                 std::size_t node_index) {
  const double omega = k.norm();
  if (omega <= 0.0) throw config_error("mode_set: |k| must be positive");
  if (w <= 0.0) throw config_error("mode_set: weights must be positive");
  modes_.push_back({k, omega, w, sign});
  node_of_mode_.push_back(node_index);
}

void discrete_mode_set::finalize_couplings(const radial_cutoff& cutoff) {
  sys_.validate();
  g_.assign(sys_.positions.size(),
            Eigen::Matrix3Xcd::Zero(3, static_cast<Eigen::Index>(modes_.size())));
  for (int i = 0; i < size(); ++i) {
    const mode& md = modes_[i];
    const vec3 khat = md.k / md.omega;
    const double A = mode_amplitude(md.omega, cutoff);
    const cvec3 e = eps(i);
    for (std::size_t lam = 0; lam < sys_.positions.size(); ++lam) {
      const complexd phase = std::polar(1.0, -md.k.dot(sys_.positions[lam]));
      for (int m = 1; m <= 3; ++m) {
        const vec3 v = khat.cross(vec3::Unit(m - 1));
        // g = <eps, i A e^{-ik.x} v>
        g_[lam](m - 1, i) = e.conjugate().dot(v.cast<complexd>()) *
                            (1i * A * phase);
      }
    }
  }
}

cvec3 discrete_mode_set::eps(int i) const {
  const mode& md = modes_[i];
  vec3 e1, e2;
  if (grid_ && i < static_cast<int>(node_of_mode_.size())) {
    e1 = grid_->e1(node_of_mode_[i]);
    e2 = grid_->e2(node_of_mode_[i]);
  } else {
    std::tie(e1, e2) = transverse_frame(md.k / md.omega);
  }
  return circular_polarization(e1, e2, md.sign);
}

discrete_mode_set discrete_mode_set::single_mode(double omega, double weight,
                                                 const vec3& direction,
                                                 polarization sign,
                                                 const spin_system& sys,
                                                 const radial_cutoff& cutoff) {
  if (omega <= 0.0) throw config_error("single_mode: omega must be positive");
  discrete_mode_set s;
  s.sys_ = sys;
  const vec3 k = omega * direction.normalized();
  s.grid_ = kgrid::from_nodes({k}, {weight});
  s.add_mode(k, weight, sign, 0);
  s.finalize_couplings(cutoff);
  return s;
}

discrete_mode_set discrete_mode_set::from_grid(const grid_ptr& grid,
                                               const spin_system& sys,
                                               const radial_cutoff& cutoff) {
  discrete_mode_set s;
  s.sys_ = sys;
  s.grid_ = grid;
  for (std::size_t n = 0; n < grid->size(); ++n) {
    s.add_mode(grid->k(n), grid->weight(n), polarization::plus, n);
    s.add_mode(grid->k(n), grid->weight(n), polarization::minus, n);
  }
  s.finalize_couplings(cutoff);
  return s;
}

discrete_mode_set discrete_mode_set::shell(const grid_ptr& grid,
                                           const spin_system& sys,
                                           const radial_cutoff& cutoff,
                                           double nu, double eps,
                                           polarization sign) {
  discrete_mode_set s;
  s.sys_ = sys;
  s.grid_ = grid;
  for (std::size_t n = 0; n < grid->size(); ++n)
    if (std::abs(grid->omega(n) - nu) < eps)
      s.add_mode(grid->k(n), grid->weight(n), sign, n);
  if (s.modes_.empty())
    throw config_error("shell mode set: no grid nodes inside the shell");
  s.finalize_couplings(cutoff);
  return s;
}

cvec discrete_mode_set::amplitudes_of(const phase_point& x) const {
  if (x.grid() != grid_)
    throw config_error("mode_set: phase point lives on a different grid");
  cvec u(size());
  for (int i = 0; i < size(); ++i) {
    const std::size_t n = node_of_mode_[i];
    const cvec3 value{x.amplitude(n, 0), x.amplitude(n, 1), x.amplitude(n, 2)};
    u[i] = eps(i).conjugate().dot(value);
  }
  return u;
}

phase_point discrete_mode_set::to_phase_point(const cvec& u) const {
  if (!grid_) throw config_error("mode_set: no source grid");
  if (u.size() != size()) throw config_error("mode_set: amplitude count mismatch");
  phase_point x(grid_);
  for (int i = 0; i < size(); ++i) {
    const std::size_t n = node_of_mode_[i];
    const cvec3 value = u[i] * eps(i);
    x.set_node(n, x.q(n) + value.real(), x.p(n) + value.imag());
  }
  return x;
}

double discrete_mode_set::norm2(const cvec& u) const {
  double s = 0.0;
  for (int i = 0; i < size(); ++i) s += modes_[i].weight * std::norm(u[i]);
  return s;
}

double discrete_mode_set::b_free(int j, int lambda, double t,
                                 const cvec& u) const {
  kahan_sum acc;
  for (int i = 0; i < size(); ++i) {
    const complexd term = std::conj(coupling(j, lambda, i)) *
                          std::polar(1.0, -modes_[i].omega * t) * u[i];
    acc.add(modes_[i].weight * term.real());
  }
  return acc.value();
}

double discrete_mode_set::e_free(int j, int lambda, double t,
                                 const cvec& u) const {
  kahan_sum acc;
  for (int i = 0; i < size(); ++i) {
    const double s = (modes_[i].sign == polarization::plus) ? 1.0 : -1.0;
    // helicity acts as +-i per circular mode: E amplitude = i s g
    const complexd ecoef = 1i * s * coupling(j, lambda, i);
    const complexd term =
        std::conj(ecoef) * std::polar(1.0, -modes_[i].omega * t) * u[i];
    acc.add(modes_[i].weight * term.real());
  }
  return acc.value();
}

double discrete_mode_set::e_pol_free(int j, int lambda, double t,
                                     const cvec& u) const {
  kahan_sum acc;
  for (int i = 0; i < size(); ++i) {
    // (Pi_+ - Pi_-) J g = i g at every circular mode, either sign
    const complexd ecoef = 1i * coupling(j, lambda, i);
    const complexd term =
        std::conj(ecoef) * std::polar(1.0, -modes_[i].omega * t) * u[i];
    acc.add(modes_[i].weight * term.real());
  }
  return acc.value();
}

field_drive discrete_mode_set::drive(const cvec& u) const {
  auto self = *this;  // value copy keeps the drive self-contained
  return [self, u](int lambda, double t) {
    return vec3{self.b_free(1, lambda + 1, t, u),
                self.b_free(2, lambda + 1, t, u),
                self.b_free(3, lambda + 1, t, u)};
  };
}

cmat discrete_mode_set::n0_rate(double t, const cvec& u,
                                const spin_system& sys,
                                const rotation_state& rot) const {
  const int dim = sys.spin_dim();
  cmat rate = cmat::Zero(dim, dim);
  for (int lam = 1; lam <= sys.n_particles(); ++lam) {
    const spin_symbol s0 = spin_symbol0(rot, lam, sys.n_particles());
    for (int j = 1; j <= 3; ++j)
      rate -= e_pol_free(j, lam, t, u) * s0[j - 1];
  }
  return rate;
}

double discrete_mode_set::first_order_sigma3(double bmag, double t) const {
  double acc = 0.0;
  for (int i = 0; i < size(); ++i) {
    const complexd gc = coupling(1, 1, i) + 1i * coupling(2, 1, i);
    const double theta = 2.0 * bmag - modes_[i].omega;
    acc += 2.0 * modes_[i].weight * std::norm(gc) *
           resonance_weight(theta, t);
  }
  return acc;
}

// ---------------------------------------------------------------------------
// fock_basis

fock_basis::fock_basis(int n_modes, int n_max, int n_particles,
                       std::size_t dim_limit)
    : n_modes_(n_modes), n_max_(n_max), n_particles_(n_particles) {
  if (n_modes < 1) throw config_error("fock_basis: need at least one mode");
  if (n_max < 0) throw config_error("fock_basis: n_max must be >= 0");
  if (n_particles < 1) throw config_error("fock_basis: need >= 1 particle");

  std::vector<int> occ(n_modes, 0);
  std::function<void(int, int)> rec = [&](int mode, int budget) {
    if (mode == n_modes) {
      occ_.push_back(occ);
      return;
    }
    for (int n = 0; n <= budget; ++n) {
      occ[mode] = n;
      rec(mode + 1, budget - n);
    }
    occ[mode] = 0;
  };
  rec(0, n_max);

  if (dim() > dim_limit)
    throw config_error("fock_basis: dimension " + std::to_string(dim()) +
                       " exceeds the configured limit " +
                       std::to_string(dim_limit));

  const long base = n_max_ + 1;
  long span = 1;
  for (int i = 0; i < n_modes_; ++i) span *= base;
  lookup_.assign(span, -1);
  for (std::size_t idx = 0; idx < occ_.size(); ++idx)
    lookup_[pack(occ_[idx])] = static_cast<long>(idx);
}

long fock_basis::pack(const std::vector<int>& occ) const {
  long key = 0;
  for (int v : occ) key = key * (n_max_ + 1) + v;
  return key;
}

long fock_basis::index_of(const std::vector<int>& occ) const {
  int total = 0;
  for (int v : occ) {
    if (v < 0 || v > n_max_) return -1;
    total += v;
  }
  if (total > n_max_) return -1;
  return lookup_[pack(occ)];
}

cmat fock_basis::annihilator(int i) const {
  if (i < 0 || i >= n_modes_) throw config_error("annihilator: bad mode index");
  cmat a = cmat::Zero(occ_count(), occ_count());
  std::vector<int> target;
  for (std::size_t src = 0; src < occ_.size(); ++src) {
    const int n = occ_[src][i];
    if (n == 0) continue;
    target = occ_[src];
    target[i] -= 1;
    const long dst = index_of(target);
    a(dst, static_cast<long>(src)) = std::sqrt(static_cast<double>(n));
  }
  return a;
}

cmat fock_basis::number_operator() const {
  cmat n = cmat::Zero(occ_count(), occ_count());
  for (std::size_t idx = 0; idx < occ_.size(); ++idx) {
    int total = 0;
    for (int v : occ_[idx]) total += v;
    n(idx, idx) = static_cast<double>(total);
  }
  return n;
}

// ---------------------------------------------------------------------------
// Hamiltonian and states

cmat assemble_hamiltonian(const discrete_mode_set& modes,
                          const spin_system& sys, double hbar,
                          const fock_basis& basis) {
  if (hbar <= 0.0) throw config_error("assemble_hamiltonian: hbar must be > 0");
  if (basis.n_modes() != modes.size())
    throw config_error("assemble_hamiltonian: basis/mode count mismatch");
  if (basis.n_particles() != sys.n_particles())
    throw config_error("assemble_hamiltonian: basis/system mismatch");

  const std::size_t dim = basis.dim();
  const int sd = basis.spin_dim();
  cmat h = cmat::Zero(dim, dim);

  // photon free part: hbar sum_i omega_i n_i, diagonal
  for (std::size_t occ = 0; occ < basis.occ_count(); ++occ) {
    double e = 0.0;
    for (int i = 0; i < modes.size(); ++i)
      e += modes[i].omega * basis.occupancy(occ)[i];
    for (int s = 0; s < sd; ++s) h(occ * sd + s, occ * sd + s) = hbar * e;
  }

  // interaction: hbar sum_lambda sum_m (B^ext_m + Phi_S(B_m,x_lambda)) sigma_m
  const cmat id_occ = cmat::Identity(basis.occ_count(), basis.occ_count());
  std::vector<cmat> ladders;
  ladders.reserve(modes.size());
  for (int i = 0; i < modes.size(); ++i) ladders.push_back(basis.annihilator(i));

  for (int lam = 1; lam <= sys.n_particles(); ++lam) {
    for (int m = 1; m <= 3; ++m) {
      const cmat sigma = pauli_embedded(m, lam, sys.n_particles());
      cmat phi = sys.b_ext[m - 1] * id_occ;
      for (int i = 0; i < modes.size(); ++i) {
        const complexd g = modes.coupling(m, lam, i);
        const double c = std::sqrt(0.5 * hbar * modes[i].weight);
        phi += c * (std::conj(g) * ladders[i] +
                    g * ladders[i].adjoint());
      }
      add_kron(h, phi, sigma, hbar);
    }
  }
  return h;
}

coherent_state coherent_vector(const cvec& u, const discrete_mode_set& modes,
                               double hbar, const fock_basis& basis) {
  if (hbar <= 0.0) throw config_error("coherent_vector: hbar must be > 0");
  if (u.size() != modes.size() || basis.n_modes() != modes.size())
    throw config_error("coherent_vector: amplitude/mode count mismatch");

  cvec alpha(modes.size());
  double norm2_alpha = 0.0;
  for (int i = 0; i < modes.size(); ++i) {
    alpha[i] = std::sqrt(modes[i].weight) * u[i] / std::sqrt(2.0 * hbar);
    norm2_alpha += std::norm(alpha[i]);
  }

  // per-mode tables alpha^n / sqrt(n!)
  std::vector<std::vector<complexd>> table(modes.size());
  for (int i = 0; i < modes.size(); ++i) {
    table[i].resize(basis.n_max() + 1);
    table[i][0] = 1.0;
    for (int n = 1; n <= basis.n_max(); ++n)
      table[i][n] = table[i][n - 1] * alpha[i] / std::sqrt(double(n));
  }

  coherent_state out;
  out.amplitudes = cvec(basis.occ_count());
  const double norm_const = std::exp(-0.5 * norm2_alpha);
  double retained = 0.0;
  for (std::size_t idx = 0; idx < basis.occ_count(); ++idx) {
    complexd c = norm_const;
    const auto& occ = basis.occupancy(idx);
    for (int i = 0; i < modes.size(); ++i) c *= table[i][occ[i]];
    out.amplitudes[idx] = c;
    retained += std::norm(c);
  }
  out.truncation_mass = std::max(0.0, 1.0 - retained);
  return out;
}

cvec tensor_with_spin(const cvec& photon, const cvec& spin) {
  cvec out(photon.size() * spin.size());
  for (Eigen::Index o = 0; o < photon.size(); ++o)
    out.segment(o * spin.size(), spin.size()) = photon[o] * spin;
  return out;
}

// ---------------------------------------------------------------------------
// propagation

spectral_propagator::spectral_propagator(const cmat& h) {
  Eigen::SelfAdjointEigenSolver<cmat> solver(h);
  if (solver.info() != Eigen::Success)
    throw numeric_error("spectral_propagator: eigensolver failed (dim = " +
                        std::to_string(h.rows()) + ")");
  evals_ = solver.eigenvalues();
  evecs_ = solver.eigenvectors();
}

cvec spectral_propagator::evolve(const cvec& psi0, double t,
                                 double hbar) const {
  cvec coeff = evecs_.adjoint() * psi0;
  for (Eigen::Index i = 0; i < coeff.size(); ++i)
    coeff[i] *= std::polar(1.0, -t * evals_[i] / hbar);
  return evecs_ * coeff;
}

namespace {

// Short-iterate Lanczos approximation of e^{-i tau H} psi for Hermitian H.
cvec lanczos_expv(const cmat& h, const cvec& psi, double tau, int m = 40) {
  const double beta0 = psi.norm();
  if (beta0 == 0.0) return psi;
  std::vector<cvec> v;
  v.push_back(psi / beta0);
  std::vector<double> alpha, beta;
  for (int j = 0; j < m; ++j) {
    cvec w = h * v[j];
    if (j > 0) w -= beta[j - 1] * v[j - 1];
    const double a = std::real(v[j].dot(w));
    alpha.push_back(a);
    w -= a * v[j];
    // full reorthogonalization keeps the small basis clean
    for (const auto& vi : v) w -= vi.dot(w) * vi;
    const double b = w.norm();
    if (b < 1e-14) break;
    beta.push_back(b);
    if (static_cast<int>(v.size()) == m) break;
    v.push_back(w / b);
  }
  const int k = static_cast<int>(v.size());
  Eigen::MatrixXd tmat = Eigen::MatrixXd::Zero(k, k);
  for (int i = 0; i < k; ++i) {
    tmat(i, i) = alpha[i];
    if (i + 1 < k) tmat(i, i + 1) = tmat(i + 1, i) = beta[i];
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(tmat);
  Eigen::VectorXcd small = Eigen::VectorXcd::Zero(k);
  const Eigen::VectorXd e1 = Eigen::VectorXd::Unit(k, 0);
  Eigen::VectorXd proj = es.eigenvectors().transpose() * e1;
  for (int i = 0; i < k; ++i)
    small += std::polar(1.0, -tau * es.eigenvalues()[i]) * proj[i] *
             es.eigenvectors().col(i).cast<complexd>();
  cvec out = cvec::Zero(psi.size());
  for (int i = 0; i < k; ++i) out += beta0 * small[i] * v[i];
  return out;
}

}  // namespace

cvec propagate(const cmat& h, const cvec& psi0, double t, double hbar,
               std::size_t eig_limit) {
  if (hbar <= 0.0) throw config_error("propagate: hbar must be > 0");
  if (h.rows() != h.cols() || h.rows() != psi0.size())
    throw config_error("propagate: dimension mismatch");
  if (static_cast<std::size_t>(h.rows()) <= eig_limit)
    return spectral_propagator(h).evolve(psi0, t, hbar);

  // Krylov fallback, documented tolerance ~1e-10: substep so that the
  // spectral spread per step stays moderate (Gershgorin bound).
  double radius = 0.0;
  for (Eigen::Index i = 0; i < h.rows(); ++i)
    radius = std::max(radius, h.row(i).cwiseAbs().sum());
  const double total_phase = radius * std::abs(t) / hbar;
  const int nsub = std::max(1, static_cast<int>(std::ceil(total_phase / 15.0)));
  cvec psi = psi0;
  for (int s = 0; s < nsub; ++s)
    psi = lanczos_expv(h, psi, (t / nsub) / hbar);
  return psi;
}

// ---------------------------------------------------------------------------
// observables

cmat wick_symbol(const cmat& a, const cvec& u, const discrete_mode_set& modes,
                 double hbar, const fock_basis& basis) {
  const coherent_state coh = coherent_vector(u, modes, hbar, basis);
  cvec psi = coh.amplitudes;
  psi.normalize();
  const int sd = basis.spin_dim();
  cmat w(sd, sd);
  for (int c = 0; c < sd; ++c) {
    const cvec col = a * tensor_with_spin(psi, cvec::Unit(sd, c));
    for (int r = 0; r < sd; ++r)
      w(r, c) = tensor_with_spin(psi, cvec::Unit(sd, r)).dot(col);
  }
  return w;
}

namespace {

cmat observable_matrix(const observable_spec& obs, const fock_basis& basis) {
  const int sd = basis.spin_dim();
  cmat out = cmat::Zero(basis.dim(), basis.dim());
  if (obs.what == observable_spec::kind::number) {
    add_kron(out, basis.number_operator(), cmat::Identity(sd, sd), 1.0);
  } else {
    add_kron(out, cmat::Identity(basis.occ_count(), basis.occ_count()),
             pauli_embedded(obs.m, obs.lambda, basis.n_particles()), 1.0);
  }
  return out;
}

}  // namespace

oracle_result observe_trajectory(const observable_spec& obs, const cvec& u,
                                 const cvec& spin_state,
                                 const discrete_mode_set& modes, double hbar,
                                 const std::vector<double>& times,
                                 const fock_basis& basis,
                                 double drift_threshold) {
  if (std::abs(spin_state.norm() - 1.0) > 1e-12)
    throw config_error("observe_trajectory: spin state must be unit norm");
  const cmat h = assemble_hamiltonian(modes, modes.system(), hbar, basis);
  const coherent_state coh = coherent_vector(u, modes, hbar, basis);
  cvec photon = coh.amplitudes;
  photon.normalize();  // truncation mass is reported, not hidden
  const cvec psi0 = tensor_with_spin(photon, spin_state);

  const cmat omat = observable_matrix(obs, basis);
  const spectral_propagator prop(h);

  // indices on the top occupancy shell (truncation drift monitor)
  std::vector<std::size_t> top;
  for (std::size_t idx = 0; idx < basis.occ_count(); ++idx) {
    int total = 0;
    for (int v : basis.occupancy(idx)) total += v;
    if (total == basis.n_max()) top.push_back(idx);
  }

  oracle_result out;
  out.times = times;
  out.hbar = hbar;
  out.initial_truncation_mass = coh.truncation_mass;
  const int sd = basis.spin_dim();
  for (double t : times) {
    const cvec psi = prop.evolve(psi0, t, hbar);
    if (std::abs(psi.norm() - 1.0) > 1e-12)
      throw numeric_error("observe_trajectory: propagation lost norm");
    out.values.push_back(std::real(psi.dot(omat * psi)));
    double shell = 0.0;
    for (std::size_t idx : top)
      shell += psi.segment(idx * sd, sd).squaredNorm();
    out.max_top_shell_mass = std::max(out.max_top_shell_mass, shell);
  }
  out.flagged = out.max_top_shell_mass > drift_threshold;
  return out;
}

sweep_result hbar_sweep(const observable_spec& obs, const cvec& u,
                        const cvec& spin_state,
                        const discrete_mode_set& modes,
                        const std::vector<double>& hbars, double t,
                        const fock_basis& basis, bool fit_quadratic,
                        std::optional<double> c0_ref, int threads) {
  if (hbars.size() < 3)
    throw config_error("hbar_sweep: need at least 3 hbar values");
  for (std::size_t i = 2; i < hbars.size(); ++i) {
    const double r1 = hbars[i - 1] / hbars[i - 2];
    const double r2 = hbars[i] / hbars[i - 1];
    if (std::abs(r1 - r2) > 0.05 * std::abs(r1))
      throw config_error("hbar_sweep: hbar list must be geometric");
  }

  sweep_result out;
  out.hbars = hbars;
  out.values.resize(hbars.size());
  out.truncation_masses.resize(hbars.size());

  auto run_one = [&](std::size_t i) {
    const double hb = hbars[i];
    const coherent_state coh = coherent_vector(u, modes, hb, basis);
    if (coh.truncation_mass > 1e-8)
      throw numeric_error("hbar_sweep: truncation mass " +
                          std::to_string(coh.truncation_mass) +
                          " at hbar = " + std::to_string(hb) +
                          " exceeds 1e-8; raise n_max");
    const oracle_result r = observe_trajectory(obs, u, spin_state, modes, hb,
                                               {t}, basis);
    out.values[i] = r.values.front();
    out.truncation_masses[i] = r.initial_truncation_mass;
  };

  if (threads <= 1 || hbars.size() == 1) {
    for (std::size_t i = 0; i < hbars.size(); ++i) run_one(i);
  } else {
    std::vector<std::thread> pool;
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    const int nthreads = std::min<int>(threads, static_cast<int>(hbars.size()));
    for (int w = 0; w < nthreads; ++w)
      pool.emplace_back([&] {
        for (;;) {
          const std::size_t i = next.fetch_add(1);
          if (i >= hbars.size()) return;
          try {
            run_one(i);
          } catch (...) {
            std::scoped_lock lock(error_mutex);
            if (!error) error = std::current_exception();
            return;
          }
        }
      });
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
  }

  // least-squares fit value = c0 + c1 h (+ c2 h^2)
  const int ncoef = fit_quadratic ? 3 : 2;
  Eigen::MatrixXd design(hbars.size(), ncoef);
  Eigen::VectorXd rhs(hbars.size());
  for (std::size_t i = 0; i < hbars.size(); ++i) {
    design(i, 0) = 1.0;
    design(i, 1) = hbars[i];
    if (fit_quadratic) design(i, 2) = hbars[i] * hbars[i];
    rhs(i) = out.values[i];
  }
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(
      design, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (svd.singularValues()(0) >
      1e12 * svd.singularValues()(ncoef - 1))
    out.flagged = true;
  const Eigen::VectorXd coef = svd.solve(rhs);
  out.c0 = coef(0);
  out.c1 = coef(1);
  if (fit_quadratic) out.c2 = coef(2);
  out.fit_residual = (design * coef - rhs).norm();

  // order of |value - c0| in hbar
  const double ref = c0_ref.value_or(out.c0);
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < hbars.size(); ++i) {
    const double d = std::abs(out.values[i] - ref);
    if (d > 1e-14) {
      lx.push_back(std::log(hbars[i]));
      ly.push_back(std::log(d));
    }
  }
  if (lx.size() >= 2) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
      sx += lx[i];
      sy += ly[i];
      sxx += lx[i] * lx[i];
      sxy += lx[i] * ly[i];
    }
    const double n = static_cast<double>(lx.size());
    out.order_estimate = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  }
  return out;
}

}  // namespace spinphoton::fock
