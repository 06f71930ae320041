#include "spinphoton/photon_number.hpp"

#include <cmath>
#include <numbers>

namespace spinphoton {

phase_point make_narrowband(const narrowband_spec& spec, const grid_ptr& grid) {
  if (spec.nu <= 0.0 || spec.eps <= 0.0)
    throw config_error("narrowband: nu and eps must be positive");
  if (spec.nu - spec.eps <= 0.0)
    throw config_error("narrowband: shell must stay away from k = 0");

  const auto& radial = grid->radial_nodes();
  if (!radial.empty()) {
    int inside = 0;
    for (double r : radial)
      if (std::abs(r - spec.nu) < spec.eps) ++inside;
    if (inside < 3) {
      const int have = std::max(inside, 1);
      const int hint = static_cast<int>(
          std::ceil(3.0 * grid->radial().n_radial / have));
      throw config_error(
          "narrowband: shell resolved by " + std::to_string(inside) +
          " radial nodes, need >= 3; try n_radial >= " + std::to_string(hint));
    }
  }

  const double s = (spec.sign == polarization::plus) ? 1.0 : -1.0;
  phase_point x(grid);
  for (std::size_t n = 0; n < grid->size(); ++n) {
    const double r = grid->omega(n);
    if (std::abs(r - spec.nu) >= spec.eps) continue;
    const double arg = std::numbers::pi * (r - spec.nu) / (2.0 * spec.eps);
    double f = spec.amplitude * std::cos(arg) * std::cos(arg);
    if (spec.angular == narrowband_spec::profile::sin_polar) {
      const double mu = grid->khat(n)[2];
      f *= std::sqrt(std::max(0.0, 1.0 - mu * mu));
    }
    // q = f e1, p = -+ f e2 sits in E_{+-} at the node
    x.set_node(n, f * grid->e1(n), -s * f * grid->e2(n));
  }
  return x;
}

cmat n0_rate(double t, const phase_point& X, const spin_system& sys,
             const rotation_state& rot, const radial_cutoff& cutoff) {
  sys.validate();
  if (static_cast<int>(rot.r.size()) != sys.n_particles())
    throw config_error("n0_rate: rotation state does not match system");
  const int dim = sys.spin_dim();
  cmat rate = cmat::Zero(dim, dim);
  for (int lam = 1; lam <= sys.n_particles(); ++lam) {
    const spin_symbol s0 = spin_symbol0(rot, lam, sys.n_particles());
    for (int j = 1; j <= 3; ++j) {
      const double e = pol_free(field_kind::electric, j,
                                sys.positions[lam - 1], t, X, cutoff);
      rate -= e * s0[j - 1];
    }
  }
  return rate;
}

double field_time_derivative_check(const vec3& x, double t,
                                   const phase_point& X, polarization sign,
                                   double nu, const radial_cutoff& cutoff) {
  const free_field_probe probe(x, X, cutoff);
  const double s = (sign == polarization::plus) ? 1.0 : -1.0;
  const vec3 db = probe.db_dt(t);
  const vec3 e = probe.e(t);
  return (db - s * nu * e).cwiseAbs().maxCoeff();
}

double energy_balance_residual(const spin_system& sys, const phase_point& X,
                               double nu, double t, double fd_dt,
                               const cvec& a, const radial_cutoff& cutoff,
                               double rk_dt) {
  sys.validate();
  if (nu <= 0.0) throw config_error("energy_balance: nu must be positive");
  if (t - fd_dt < 0.0)
    throw config_error("energy_balance: need t - fd_dt >= 0");
  if (std::abs(a.norm() - 1.0) > 1e-12)
    throw config_error("energy_balance: spin state must be unit norm");

  const std::vector<double> times{t - fd_dt, t, t + fd_dt};
  const bloch_trajectory traj =
      bloch_evolve(sys, drive_from_phase_point(sys, X, cutoff), times, rk_dt);

  // <a| n0_rate |a> at t
  const double rate =
      sandwich(n0_rate(t, X, sys, traj.at_time(t), cutoff), a).real();

  // bracket g(s) = sum_lambda s^{(lambda)}(s) . (B_ext + B^free(x_lambda,s,X))
  std::vector<free_field_probe> probes;
  for (const auto& pos : sys.positions) probes.emplace_back(pos, X, cutoff);
  std::vector<vec3> s0;
  for (int lam = 1; lam <= sys.n_particles(); ++lam) {
    vec3 v;
    for (int m = 1; m <= 3; ++m)
      v[m - 1] =
          sandwich(pauli_embedded(m, lam, sys.n_particles()), a).real();
    s0.push_back(v);
  }
  auto bracket = [&](double ts) {
    const rotation_state& st = traj.at_time(ts);
    double g = 0.0;
    for (int lam = 0; lam < sys.n_particles(); ++lam) {
      const vec3 s = st.r[lam] * s0[lam];
      g += s.dot(sys.b_ext + probes[lam].b(ts));
    }
    return g;
  };
  const double dg = (bracket(t + fd_dt) - bracket(t - fd_dt)) / (2.0 * fd_dt);
  return std::abs(rate + dg / nu);
}

}  // namespace spinphoton
