#include "spinphoton/radiative.hpp"

#include <cmath>
#include <numbers>

#include "spinphoton/quadrature.hpp"
#include "spinphoton/summation.hpp"

namespace spinphoton {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

// (2 pi)^{-3} * 4 pi: prefactor of every radial reduction here.
double radial_prefactor() { return 4.0 * std::numbers::pi / std::pow(two_pi, 3.0); }

double sinc(double z) {
  if (std::abs(z) < 1e-8) return 1.0 - z * z / 6.0;
  return std::sin(z) / z;
}

// d/dz sinc(z) = cos(z)/z - sin(z)/z^2, odd, -z/3 near 0.
double sinc_prime(double z) {
  if (std::abs(z) < 1e-4) return -z / 3.0 + z * z * z / 30.0;
  return std::cos(z) / z - std::sin(z) / (z * z);
}

// int_0^t cos(a tau) d tau
double cos_moment(double a, double t) {
  if (a == 0.0) return t;
  return std::sin(a * t) / a;
}

// int_0^t sin(a tau) d tau = (1 - cos(a t))/a; 2 sin^2(a t / 2)/a avoids the
// cancellation of 1 - cos.
double sin_moment(double a, double t) {
  if (a == 0.0) return 0.0;
  const double s = std::sin(0.5 * a * t);
  return 2.0 * s * s / a;
}

// int_0^t sin(r tau) e^{i w tau} d tau via product-to-sum.
std::complex<double> sin_exp_moment(double r, double w, double t) {
  const double re = 0.5 * (sin_moment(r + w, t) + sin_moment(r - w, t));
  const double im = 0.5 * (cos_moment(r - w, t) - cos_moment(r + w, t));
  return {re, im};
}

// J(r, t, w) = int_0^t sin(r (t-s)) e^{-i w s} ds = e^{-i w t} * above.
std::complex<double> retarded_moment(double r, double w, double t) {
  return std::polar(1.0, -w * t) * sin_exp_moment(r, w, t);
}

quad_rule radial_rule(const radiative_context& ctx) {
  return composite_gauss_legendre(ctx.n_radial, 0.0, ctx.max_r);
}

template <typename F>
double radial_integral(const radiative_context& ctx, F&& integrand) {
  const quad_rule rule = radial_rule(ctx);
  std::vector<double> terms(rule.size());
  for (std::size_t i = 0; i < rule.size(); ++i)
    terms[i] = rule.weights[i] * integrand(rule.nodes[i]);
  return pairwise_sum(terms);
}

void require_nonnegative_time(double t, const char* who) {
  if (t < 0.0) throw std::domain_error(std::string(who) + ": t must be >= 0");
}

// Leading-order rotation for a single particle at the origin in (0,0,B):
// z rotation by angle 2 B t.
mat3 leading_rotation(double bmag, double t) {
  const double c = std::cos(2.0 * bmag * t), s = std::sin(2.0 * bmag * t);
  mat3 r;
  r << c, -s, 0.0, s, c, 0.0, 0.0, 0.0, 1.0;
  return r;
}

}  // namespace

double rho(const vec3& x, const radiative_context& ctx) {
  const double dist = x.norm();
  return radial_prefactor() * radial_integral(ctx, [&](double r) {
           const double c = ctx.cutoff(r);
           return r * r * c * c * sinc(r * dist);
         });
}

double rho_radial_derivative(double dist, const radiative_context& ctx) {
  return radial_prefactor() * radial_integral(ctx, [&](double r) {
           const double c = ctx.cutoff(r);
           return r * r * r * c * c * sinc_prime(r * dist);
         });
}

std::complex<double> u_kernel(const vec3& x, double t, double omega,
                              const radiative_context& ctx) {
  require_nonnegative_time(t, "u_kernel");
  const double dist = x.norm();
  const double re = radial_prefactor() * radial_integral(ctx, [&](double r) {
                      const double c = ctx.cutoff(r);
                      return r * c * c * sinc(r * dist) *
                             retarded_moment(r, omega, t).real();
                    });
  const double im = radial_prefactor() * radial_integral(ctx, [&](double r) {
                      const double c = ctx.cutoff(r);
                      return r * c * c * sinc(r * dist) *
                             retarded_moment(r, omega, t).imag();
                    });
  return {re, im};
}

std::complex<double> u_kernel_numeric_s(const vec3& x, double t, double omega,
                                        const radiative_context& ctx,
                                        int n_s) {
  require_nonnegative_time(t, "u_kernel_numeric_s");
  if (t == 0.0) return 0.0;
  const double dist = x.norm();
  const quad_rule srule = composite_gauss_legendre(n_s, 0.0, t);
  auto component = [&](bool imag_part) {
    return radial_prefactor() * radial_integral(ctx, [&](double r) {
             const double c = ctx.cutoff(r);
             kahan_sum acc;
             for (std::size_t i = 0; i < srule.size(); ++i) {
               const double s = srule.nodes[i];
               const double core = std::sin(r * (t - s));
               const double trig = imag_part ? -std::sin(omega * s)
                                             : std::cos(omega * s);
               acc.add(srule.weights[i] * core * trig);
             }
             return r * c * c * sinc(r * dist) * acc.value();
           });
  };
  return {component(false), component(true)};
}

std::complex<double> laplacian_u_origin(double t, double omega,
                                        const radiative_context& ctx) {
  require_nonnegative_time(t, "laplacian_u_origin");
  const double re = radial_prefactor() * radial_integral(ctx, [&](double r) {
                      const double c = ctx.cutoff(r);
                      return r * r * r * c * c *
                             retarded_moment(r, omega, t).real();
                    });
  const double im = radial_prefactor() * radial_integral(ctx, [&](double r) {
                      const double c = ctx.cutoff(r);
                      return r * r * r * c * c *
                             retarded_moment(r, omega, t).imag();
                    });
  return {-re, -im};
}

current_density current_j1(const vec3& x, const rotation_state& rot,
                           const spin_system& sys,
                           const radiative_context& ctx) {
  sys.validate();
  current_density out;
  out.coeff.reserve(sys.positions.size());
  for (std::size_t lam = 0; lam < sys.positions.size(); ++lam) {
    Eigen::Matrix<double, 3, 4> block = Eigen::Matrix<double, 3, 4>::Zero();
    const vec3 y = x - sys.positions[lam];
    const double dist = y.norm();
    if (dist > 0.0) {
      const vec3 grad = rho_radial_derivative(dist, ctx) * (y / dist);
      const mat3& r = rot.r[lam];
      // J_i = eps_{iab} (R_{an} sigma_n)_a grad_b  ->  coefficient of
      // sigma_n is column n of R crossed with grad.
      for (int n = 0; n < 3; ++n)
        block.col(n + 1) = vec3(r.col(n)).cross(grad);
    }
    out.coeff.push_back(block);
  }
  return out;
}

spin_symbol b1_field_origin(double t, double bmag,
                            const radiative_context& ctx) {
  require_nonnegative_time(t, "b1_field_origin");
  const std::complex<double> lap = laplacian_u_origin(t, 2.0 * bmag, ctx);
  const double lap0 = laplacian_u_origin(t, 0.0, ctx).real();
  const double f = 2.0 / 3.0;

  spin_symbol b;
  const cmat s1 = pauli(1), s2 = pauli(2), s3 = pauli(3);
  b[0] = f * (lap.real() * s1 + lap.imag() * s2);
  b[1] = f * (-lap.imag() * s1 + lap.real() * s2);
  b[2] = f * lap0 * s3;
  return b;
}

double phi0(double t, double bmag, const radiative_context& ctx) {
  require_nonnegative_time(t, "phi0");
  const double w = 2.0 * bmag;
  // int_0^t sin(r tau) sin(w tau) d tau, product-to-sum
  return -(4.0 / 3.0) * radial_prefactor() *
         radial_integral(ctx, [&](double r) {
           const double c = ctx.cutoff(r);
           const double ss =
               0.5 * (cos_moment(r - w, t) - cos_moment(r + w, t));
           return r * r * r * c * c * ss;
         });
}

double phi3(double t, double bmag, const radiative_context& ctx) {
  require_nonnegative_time(t, "phi3");
  const double w = 2.0 * bmag;
  return -(4.0 / 3.0) * radial_prefactor() *
         radial_integral(ctx, [&](double r) {
           const double c = ctx.cutoff(r);
           const double cc =
               0.5 * (cos_moment(r - w, t) + cos_moment(r + w, t));
           return r * r * r * c * c * cc;
         });
}

namespace {
double phi_numeric(double t, double bmag, const radiative_context& ctx,
                   int n_s, bool cosine) {
  if (t == 0.0) return 0.0;
  const double w = 2.0 * bmag;
  const quad_rule srule = composite_gauss_legendre(n_s, 0.0, t);
  return -(4.0 / 3.0) * radial_prefactor() *
         radial_integral(ctx, [&](double r) {
           const double c = ctx.cutoff(r);
           kahan_sum acc;
           for (std::size_t i = 0; i < srule.size(); ++i) {
             const double tau = t - srule.nodes[i];
             const double core = cosine ? std::cos(r * tau) * std::cos(w * tau)
                                        : std::sin(r * tau) * std::sin(w * tau);
             acc.add(srule.weights[i] * core);
           }
           return r * r * r * c * c * acc.value();
         });
}
}  // namespace

double phi0_numeric_s(double t, double bmag, const radiative_context& ctx,
                      int n_s) {
  require_nonnegative_time(t, "phi0_numeric_s");
  return phi_numeric(t, bmag, ctx, n_s, false);
}

double phi3_numeric_s(double t, double bmag, const radiative_context& ctx,
                      int n_s) {
  require_nonnegative_time(t, "phi3_numeric_s");
  return phi_numeric(t, bmag, ctx, n_s, true);
}

double resonance_weight(double theta, double t) {
  if (std::abs(theta) < 1e-4) {
    const double t2 = t * t;
    return -0.5 * t2 + theta * theta * t2 * t2 / 24.0;
  }
  return (std::cos(theta * t) - 1.0) / (theta * theta);
}

double s1_third(double t, double bmag, const radiative_context& ctx,
                spin_start a) {
  require_nonnegative_time(t, "s1_third");
  const double w = (a == spin_start::up) ? 2.0 * bmag : -2.0 * bmag;
  const double sign = (a == spin_start::up) ? 1.0 : -1.0;
  return sign * (8.0 / 3.0) * radial_prefactor() *
         radial_integral(ctx, [&](double r) {
           const double c = ctx.cutoff(r);
           return r * r * r * c * c * resonance_weight(r - w, t);
         });
}

vec3 k3_kernel(double t, const phase_point& V, const radial_cutoff& cutoff) {
  const vec3 origin = vec3::Zero();
  return {2.0 * b_free(2, origin, t, V, cutoff),
          -2.0 * b_free(1, origin, t, V, cutoff), 0.0};
}

vec3 k_kernel(int j, double t, const phase_point& V, double bmag,
              const radial_cutoff& cutoff) {
  if (j < 1 || j > 3) throw config_error("k_kernel: index must be 1..3");
  const vec3 origin = vec3::Zero();
  const vec3 b{b_free(1, origin, t, V, cutoff), b_free(2, origin, t, V, cutoff),
               b_free(3, origin, t, V, cutoff)};
  const vec3 cj = leading_rotation(bmag, t).col(j - 1);
  return 2.0 * b.cross(cj);
}

vec3 h_kernel(int j, double t, const phase_point& V, double bmag,
              const radial_cutoff& cutoff, int n_time) {
  if (j < 1 || j > 3) throw config_error("h_kernel: index must be 1..3");
  require_nonnegative_time(t, "h_kernel");
  if (t == 0.0) return vec3::Zero();
  const quad_rule rule = composite_gauss_legendre(n_time, 0.0, t);
  const free_field_probe probe(vec3::Zero(), V, cutoff);
  kahan_sum h1, h2, h3;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const double s = rule.nodes[i];
    const vec3 b = probe.b(s);
    const vec3 cj = leading_rotation(bmag, s).col(j - 1);
    const vec3 k = 2.0 * b.cross(cj);
    const double ang = 2.0 * bmag * (t - s);
    const double c = std::cos(ang), sn = std::sin(ang);
    h1.add(rule.weights[i] * (c * k[0] - sn * k[1]));
    h2.add(rule.weights[i] * (sn * k[0] + c * k[1]));
    h3.add(rule.weights[i] * k[2]);
  }
  return {h1.value(), h2.value(), h3.value()};
}

vec3 g3_coefficient(double t, double bmag, const grid_ptr& grid,
                    const radiative_context& ctx) {
  require_nonnegative_time(t, "g3_coefficient");
  // B_{n,0,t} = e^{i t |k|} B_{n,0} = free_evolve(bmode, -t)
  std::array<phase_point, 3> bt = {
      free_evolve(bmode(1, vec3::Zero(), grid, ctx.cutoff), -t),
      free_evolve(bmode(2, vec3::Zero(), grid, ctx.cutoff), -t),
      free_evolve(bmode(3, vec3::Zero(), grid, ctx.cutoff), -t)};
  std::array<vec3, 3> h;
  for (int n = 0; n < 3; ++n)
    h[n] = h_kernel(3, t, bt[n], bmag, ctx.cutoff, ctx.n_time);
  return 0.5 * vec3{h[1][2] - h[2][1], h[2][0] - h[0][2], h[0][1] - h[1][0]};
}

f_pair f_coefficients(double t, double bmag, const radiative_context& ctx) {
  require_nonnegative_time(t, "f_coefficients");
  f_pair out;
  if (t == 0.0) return out;
  const quad_rule rule = composite_gauss_legendre(ctx.n_time, 0.0, t);
  kahan_sum acc0, acc3;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    acc0.add(rule.weights[i] * phi0(rule.nodes[i], bmag, ctx));
    acc3.add(rule.weights[i] * phi3(rule.nodes[i], bmag, ctx));
  }
  out.f0 = vec3{0.0, 0.0, 2.0 * acc0.value()};
  out.f3 = vec3{0.0, 0.0, 2.0 * acc3.value()};
  return out;
}

correction_series sample_corrections(const std::vector<double>& times,
                                     double bmag,
                                     const radiative_context& ctx) {
  correction_series out;
  out.bmag = bmag;
  out.t = times;
  out.phi0.reserve(times.size());
  out.phi3.reserve(times.size());
  out.f3_z.reserve(times.size());
  out.s1_z.reserve(times.size());
  for (double t : times) {
    out.phi0.push_back(phi0(t, bmag, ctx));
    out.phi3.push_back(phi3(t, bmag, ctx));
    out.f3_z.push_back(f_coefficients(t, bmag, ctx).f3[2]);
    out.s1_z.push_back(s1_third(t, bmag, ctx));
  }
  return out;
}

}  // namespace spinphoton
