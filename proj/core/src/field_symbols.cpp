#include "spinphoton/field_symbols.hpp"

#include <cmath>
#include <numbers>

#include "spinphoton/quadrature.hpp"
#include "spinphoton/summation.hpp"

namespace spinphoton {

namespace {
constexpr double two_pi = 2.0 * std::numbers::pi;

void check_component(int j) {
  if (j < 1 || j > 3) throw config_error("field component index must be 1..3");
}
}  // namespace

double mode_amplitude(double r, const radial_cutoff& cutoff) {
  return cutoff(r) * std::sqrt(r) / std::pow(two_pi, 1.5);
}

field_coefficient bmode(int j, const vec3& x, const grid_ptr& grid,
                        const radial_cutoff& cutoff) {
  check_component(j);
  const auto& g = *grid;
  phase_point out(grid);
  const vec3 ej = vec3::Unit(j - 1);
  for (std::size_t n = 0; n < g.size(); ++n) {
    const double A = mode_amplitude(g.omega(n), cutoff);
    const vec3 v = g.khat(n).cross(ej);
    const double ph = g.k(n).dot(x);
    // i A e^{-i ph} v  ->  q = A sin(ph) v,  p = A cos(ph) v
    out.set_node(n, A * std::sin(ph) * v, A * std::cos(ph) * v);
  }
  return out;
}

field_coefficient emode(int j, const vec3& x, const grid_ptr& grid,
                        const radial_cutoff& cutoff) {
  return helicity(bmode(j, x, grid, cutoff));
}

double b_free(int j, const vec3& x, double t, const phase_point& X,
              const radial_cutoff& cutoff) {
  check_component(j);
  const auto& g = *X.grid();
  const vec3 ej = vec3::Unit(j - 1);
  std::vector<double> terms(g.size());
  for (std::size_t n = 0; n < g.size(); ++n) {
    const double A = mode_amplitude(g.omega(n), cutoff);
    const vec3 v = g.khat(n).cross(ej);
    const double th = g.k(n).dot(x) - t * g.omega(n);
    terms[n] = g.weight(n) * A *
               (std::sin(th) * v.dot(X.q(n)) + std::cos(th) * v.dot(X.p(n)));
  }
  return pairwise_sum(terms);
}

double e_free(int j, const vec3& x, double t, const phase_point& X,
              const radial_cutoff& cutoff) {
  check_component(j);
  const auto& g = *X.grid();
  std::vector<double> terms(g.size());
  for (std::size_t n = 0; n < g.size(); ++n) {
    const double A = mode_amplitude(g.omega(n), cutoff);
    const double th = g.k(n).dot(x) - t * g.omega(n);
    terms[n] = -g.weight(n) * A *
               (std::sin(th) * X.q(n)[j - 1] + std::cos(th) * X.p(n)[j - 1]);
  }
  return pairwise_sum(terms);
}

double pol_free(field_kind kind, int j, const vec3& x, double t,
                const phase_point& X, const radial_cutoff& cutoff) {
  const field_coefficient coef = (kind == field_kind::magnetic)
                                     ? bmode(j, x, X.grid(), cutoff)
                                     : emode(j, x, X.grid(), cutoff);
  const phase_point pol = polar_project(coef, polarization::plus) -
                          polar_project(coef, polarization::minus);
  return inner(pol, free_evolve(X, t));
}

double mode_correlator(int m, int n, const vec3& /*x*/, double t, double s,
                       const radial_cutoff& cutoff, double max_r,
                       int n_radial_1d) {
  check_component(m);
  check_component(n);
  if (m != n) return 0.0;
  const double lag = t - s;
  const double pref = (2.0 / 3.0) * std::pow(two_pi, -3.0) * 4.0 * std::numbers::pi;
  return pref * integrate(
                    [&](double r) {
                      const double c = cutoff(r);
                      return r * r * r * c * c * std::cos(r * lag);
                    },
                    0.0, max_r, n_radial_1d);
}

double qt_form(const phase_point& V, double t, const spin_system& sys,
               const radial_cutoff& cutoff, int n_time) {
  sys.validate();
  if (t == 0.0) return 0.0;
  const double lo = std::min(0.0, t);
  const double hi = std::max(0.0, t);
  const quad_rule rule = composite_gauss_legendre(n_time, lo, hi);

  std::vector<free_field_probe> probes;
  probes.reserve(sys.positions.size());
  for (const auto& x : sys.positions) probes.emplace_back(x, V, cutoff);

  kahan_sum acc;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    double val = 0.0;
    for (const auto& probe : probes) val += probe.b(rule.nodes[i]).squaredNorm();
    acc.add(rule.weights[i] * val);
  }
  const double pow2n = std::ldexp(1.0, sys.n_particles());  // 2^N
  return pow2n * std::abs(t) * acc.value();
}

free_field_probe::free_field_probe(const vec3& x, const phase_point& X,
                                   const radial_cutoff& cutoff) {
  const auto& g = *X.grid();
  n_ = g.size();
  phase0_.resize(n_);
  omega_.resize(n_);
  for (int j = 0; j < 3; ++j) {
    bq_[j].resize(n_);
    bp_[j].resize(n_);
    eq_[j].resize(n_);
    ep_[j].resize(n_);
  }
  for (std::size_t n = 0; n < n_; ++n) {
    phase0_[n] = g.k(n).dot(x);
    omega_[n] = g.omega(n);
    const double wA = g.weight(n) * mode_amplitude(g.omega(n), cutoff);
    for (int j = 0; j < 3; ++j) {
      const vec3 v = g.khat(n).cross(vec3::Unit(j));
      bq_[j][n] = wA * v.dot(X.q(n));
      bp_[j][n] = wA * v.dot(X.p(n));
      eq_[j][n] = wA * X.q(n)[j];
      ep_[j][n] = wA * X.p(n)[j];
    }
  }
}

vec3 free_field_probe::b(double t) const {
  std::array<kahan_sum, 3> acc;
  for (std::size_t n = 0; n < n_; ++n) {
    const double th = phase0_[n] - t * omega_[n];
    const double s = std::sin(th), c = std::cos(th);
    for (int j = 0; j < 3; ++j) acc[j].add(s * bq_[j][n] + c * bp_[j][n]);
  }
  return {acc[0].value(), acc[1].value(), acc[2].value()};
}

vec3 free_field_probe::e(double t) const {
  std::array<kahan_sum, 3> acc;
  for (std::size_t n = 0; n < n_; ++n) {
    const double th = phase0_[n] - t * omega_[n];
    const double s = std::sin(th), c = std::cos(th);
    for (int j = 0; j < 3; ++j) acc[j].add(-(s * eq_[j][n] + c * ep_[j][n]));
  }
  return {acc[0].value(), acc[1].value(), acc[2].value()};
}

vec3 free_field_probe::db_dt(double t) const {
  // d/dt of b(): theta' = -omega per node.
  std::array<kahan_sum, 3> acc;
  for (std::size_t n = 0; n < n_; ++n) {
    const double th = phase0_[n] - t * omega_[n];
    const double s = std::sin(th), c = std::cos(th);
    for (int j = 0; j < 3; ++j)
      acc[j].add(omega_[n] * (-c * bq_[j][n] + s * bp_[j][n]));
  }
  return {acc[0].value(), acc[1].value(), acc[2].value()};
}

}  // namespace spinphoton
