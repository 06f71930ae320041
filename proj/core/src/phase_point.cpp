#include "spinphoton/phase_point.hpp"

#include <cmath>

#include "spinphoton/common.hpp"
#include "spinphoton/summation.hpp"

namespace spinphoton {

phase_point::phase_point(grid_ptr grid) : grid_(std::move(grid)) {
  if (!grid_) throw config_error("phase_point: null grid");
  q_ = Eigen::Matrix3Xd::Zero(3, static_cast<Eigen::Index>(grid_->size()));
  p_ = Eigen::Matrix3Xd::Zero(3, static_cast<Eigen::Index>(grid_->size()));
}

phase_point phase_point::transverse(grid_ptr grid, Eigen::Matrix3Xd q,
                                    Eigen::Matrix3Xd p, double tol) {
  phase_point x(std::move(grid));
  if (q.cols() != static_cast<Eigen::Index>(x.grid_->size()) ||
      p.cols() != static_cast<Eigen::Index>(x.grid_->size()))
    throw config_error("phase_point: data size does not match grid");
  x.q_ = std::move(q);
  x.p_ = std::move(p);
  const double res = x.transversality_residual();
  if (res > tol)
    throw numeric_error("phase_point: transversality violated, residual = " +
                        std::to_string(res));
  return x;
}

phase_point phase_point::random(grid_ptr grid, std::mt19937& rng,
                                double sigma) {
  phase_point x(std::move(grid));
  std::normal_distribution<double> gauss(0.0, sigma);
  const auto& g = *x.grid_;
  for (std::size_t n = 0; n < g.size(); ++n) {
    vec3 q{gauss(rng), gauss(rng), gauss(rng)};
    vec3 p{gauss(rng), gauss(rng), gauss(rng)};
    const vec3& khat = g.khat(n);
    q -= khat.dot(q) * khat;
    p -= khat.dot(p) * khat;
    x.set_node(n, q, p);
  }
  return x;
}

namespace {
void check_same_grid(const phase_point& a, const phase_point& b) {
  if (a.grid() != b.grid())
    throw config_error("phase_point: operands live on different grids");
}
}  // namespace

phase_point phase_point::operator+(const phase_point& o) const {
  check_same_grid(*this, o);
  phase_point r(grid_);
  r.q_ = q_ + o.q_;
  r.p_ = p_ + o.p_;
  return r;
}

phase_point phase_point::operator-(const phase_point& o) const {
  check_same_grid(*this, o);
  phase_point r(grid_);
  r.q_ = q_ - o.q_;
  r.p_ = p_ - o.p_;
  return r;
}

phase_point phase_point::operator*(double c) const {
  phase_point r(grid_);
  r.q_ = c * q_;
  r.p_ = c * p_;
  return r;
}

double phase_point::transversality_residual() const {
  double worst = 0.0;
  for (std::size_t n = 0; n < grid_->size(); ++n) {
    const vec3& khat = grid_->khat(n);
    worst = std::max(worst, std::abs(khat.dot(q(n))));
    worst = std::max(worst, std::abs(khat.dot(p(n))));
  }
  return worst;
}

double inner(const phase_point& x, const phase_point& y) {
  check_same_grid(x, y);
  const auto& g = *x.grid();
  std::vector<double> terms(g.size());
  for (std::size_t n = 0; n < g.size(); ++n)
    terms[n] = g.weight(n) *
               (x.q(n).dot(y.q(n)) + x.p(n).dot(y.p(n)));
  return pairwise_sum(terms);
}

phase_point helicity(const phase_point& x) {
  const auto& g = *x.grid();
  phase_point r(x.grid());
  for (std::size_t n = 0; n < g.size(); ++n)
    r.set_node(n, g.khat(n).cross(x.q(n)), g.khat(n).cross(x.p(n)));
  return r;
}

phase_point polar_project(const phase_point& x, polarization sign) {
  const auto& g = *x.grid();
  const double s = (sign == polarization::plus) ? 1.0 : -1.0;
  phase_point r(x.grid());
  for (std::size_t n = 0; n < g.size(); ++n) {
    const vec3& khat = g.khat(n);
    // Pi_+- (q, p) = (q +- khat x p, p -+ khat x q) / 2
    r.set_node(n, 0.5 * (x.q(n) + s * khat.cross(x.p(n))),
               0.5 * (x.p(n) - s * khat.cross(x.q(n))));
  }
  return r;
}

phase_point free_evolve(const phase_point& x, double t) {
  const auto& g = *x.grid();
  phase_point r(x.grid());
  for (std::size_t n = 0; n < g.size(); ++n) {
    const double th = t * g.omega(n);
    const double c = std::cos(th), s = std::sin(th);
    // (q + ip) -> e^{-i th} (q + ip)
    r.set_node(n, c * x.q(n) + s * x.p(n), -s * x.q(n) + c * x.p(n));
  }
  return r;
}

phase_point fmap(const phase_point& x) {
  phase_point r(x.grid());
  for (std::size_t n = 0; n < x.size(); ++n) r.set_node(n, -x.p(n), x.q(n));
  return r;
}

}  // namespace spinphoton
