#include "spinphoton/bloch.hpp"

#include <algorithm>
#include <cmath>

namespace spinphoton {

double rotation_state::orthogonality_residual() const {
  double worst = 0.0;
  for (const auto& m : r) {
    worst = std::max(worst,
                     (m.transpose() * m - mat3::Identity()).cwiseAbs().maxCoeff());
    worst = std::max(worst, std::abs(m.determinant() - 1.0));
  }
  return worst;
}

const rotation_state& bloch_trajectory::at_time(double t, double tol) const {
  for (const auto& s : samples)
    if (std::abs(s.t - t) <= tol) return s;
  throw config_error("bloch_trajectory: no sample at requested time");
}

field_drive drive_from_phase_point(const spin_system& sys,
                                   const phase_point& X,
                                   const radial_cutoff& cutoff) {
  auto probes = std::make_shared<std::vector<free_field_probe>>();
  probes->reserve(sys.positions.size());
  for (const auto& x : sys.positions) probes->emplace_back(x, X, cutoff);
  return [probes](int lambda, double t) { return (*probes)[lambda].b(t); };
}

namespace {

mat3 polar_orthogonalize(const mat3& m) {
  Eigen::JacobiSVD<mat3> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  mat3 r = svd.matrixU() * svd.matrixV().transpose();
  if (r.determinant() < 0.0) {
    // keep the proper rotation branch
    mat3 flip = mat3::Identity();
    flip(2, 2) = -1.0;
    r = svd.matrixU() * flip * svd.matrixV().transpose();
  }
  return r;
}

// One RK4 step of dY/dt = 2 Omega(t) x Y applied column-wise (works for
// both 3x3 rotation states and single vectors stacked as columns).
template <typename Mat, typename OmegaFn>
Mat rk4_step(const Mat& y, double t, double h, const OmegaFn& omega) {
  auto rhs = [&](double tt, const Mat& yy) -> Mat {
    const vec3 w = 2.0 * omega(tt);
    Mat out = yy;
    for (int c = 0; c < yy.cols(); ++c) out.col(c) = w.cross(vec3(yy.col(c)));
    return out;
  };
  const Mat k1 = rhs(t, y);
  const Mat k2 = rhs(t + 0.5 * h, y + 0.5 * h * k1);
  const Mat k3 = rhs(t + 0.5 * h, y + 0.5 * h * k2);
  const Mat k4 = rhs(t + h, y + h * k3);
  return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

}  // namespace

bloch_trajectory bloch_evolve(const spin_system& sys, const field_drive& drive,
                              const std::vector<double>& sample_times,
                              double dt, int reortho_every, double drift_tol) {
  sys.validate();
  if (dt <= 0.0) throw config_error("bloch_evolve: dt must be positive");
  std::vector<double> times = sample_times;
  std::sort(times.begin(), times.end());
  if (!times.empty() && times.front() < 0.0)
    throw config_error("bloch_evolve: sample times must be >= 0");

  const int npart = sys.n_particles();
  std::vector<mat3> r(npart, mat3::Identity());
  double t = 0.0;
  long step_count = 0;

  bloch_trajectory traj;
  traj.samples.reserve(times.size());

  auto emit = [&](double ts) {
    rotation_state st;
    st.t = ts;
    st.r = r;
    traj.samples.push_back(std::move(st));
  };

  for (double target : times) {
    while (t < target - 1e-13) {
      const double h = std::min(dt, target - t);
      for (int lam = 0; lam < npart; ++lam) {
        auto omega = [&](double tt) { return vec3(sys.b_ext + drive(lam, tt)); };
        r[lam] = rk4_step(r[lam], t, h, omega);
      }
      t += h;
      if (++step_count % reortho_every == 0) {
        rotation_state probe{t, r};
        const double drift = probe.orthogonality_residual();
        if (drift > drift_tol)
          throw numeric_error("bloch_evolve: rotation drift " +
                              std::to_string(drift) + " exceeds tolerance");
        for (auto& m : r) m = polar_orthogonalize(m);
      }
    }
    emit(target);
  }
  return traj;
}

bloch_trajectory bloch_evolve(const spin_system& sys, const phase_point& X,
                              const radial_cutoff& cutoff, double t_final,
                              double dt, int n_samples) {
  if (n_samples < 2) throw config_error("bloch_evolve: need >= 2 samples");
  std::vector<double> times(n_samples);
  for (int i = 0; i < n_samples; ++i)
    times[i] = t_final * i / (n_samples - 1);
  return bloch_evolve(sys, drive_from_phase_point(sys, X, cutoff), times, dt);
}

spin_symbol spin_symbol0(const rotation_state& rot, int lambda,
                         int n_particles) {
  if (lambda < 1 || lambda > static_cast<int>(rot.r.size()))
    throw config_error("spin_symbol0: particle index out of range");
  const mat3& r = rot.r[lambda - 1];
  spin_symbol s;
  const int dim = 1 << n_particles;
  for (int m = 0; m < 3; ++m) {
    s[m] = cmat::Zero(dim, dim);
    for (int n = 0; n < 3; ++n)
      s[m] += r(m, n) * pauli_embedded(n + 1, lambda, n_particles);
  }
  return s;
}

std::vector<std::vector<vec3>> bloch_vector(
    const spin_system& sys, const field_drive& drive,
    const std::vector<vec3>& s0, const std::vector<double>& sample_times,
    double dt) {
  sys.validate();
  if (dt <= 0.0) throw config_error("bloch_vector: dt must be positive");
  if (static_cast<int>(s0.size()) != sys.n_particles())
    throw config_error("bloch_vector: one initial vector per particle required");
  std::vector<double> times = sample_times;
  std::sort(times.begin(), times.end());

  const int npart = sys.n_particles();
  std::vector<vec3> s = s0;
  double t = 0.0;
  std::vector<std::vector<vec3>> out;
  out.reserve(times.size());

  for (double target : times) {
    while (t < target - 1e-13) {
      const double h = std::min(dt, target - t);
      for (int lam = 0; lam < npart; ++lam) {
        auto omega = [&](double tt) { return vec3(sys.b_ext + drive(lam, tt)); };
        Eigen::Matrix<double, 3, 1> col = s[lam];
        s[lam] = rk4_step(col, t, h, omega);
      }
      t += h;
    }
    out.push_back(s);
  }
  return out;
}

}  // namespace spinphoton
