#include "spinphoton/grid.hpp"

#include <cmath>
#include <numbers>

#include "spinphoton/quadrature.hpp"

namespace spinphoton {

std::pair<vec3, vec3> transverse_frame(const vec3& khat) {
  int axis = 0;
  double smallest = std::abs(khat[0]);
  for (int c = 1; c < 3; ++c) {
    if (std::abs(khat[c]) < smallest) {
      smallest = std::abs(khat[c]);
      axis = c;
    }
  }
  vec3 e1 = vec3::Unit(axis) - khat[axis] * khat;
  e1.normalize();
  const vec3 e2 = khat.cross(e1);
  return {e1, e2};
}

std::shared_ptr<const kgrid> kgrid::build(const radial_spec& rad,
                                          const angular_spec& ang) {
  if (rad.n_radial < 2)
    throw config_error("kgrid: n_radial must be >= 2");
  if (rad.max_r <= 0.0)
    throw config_error("kgrid: max_r must be positive");
  if (ang.n_polar < 1 || ang.n_azimuth < 1)
    throw config_error("kgrid: angular counts must be >= 1");

  const quad_rule radial = gauss_legendre(rad.n_radial, 0.0, rad.max_r);
  const quad_rule polar = gauss_legendre(ang.n_polar, -1.0, 1.0);
  const double wphi = 2.0 * std::numbers::pi / ang.n_azimuth;

  auto g = std::shared_ptr<kgrid>(new kgrid());
  g->rad_ = rad;
  g->ang_ = ang;
  g->radial_nodes_ = radial.nodes;
  const std::size_t total = static_cast<std::size_t>(rad.n_radial) *
                            ang.n_polar * ang.n_azimuth;
  g->k_.reserve(total);
  g->khat_.reserve(total);
  g->omega_.reserve(total);
  g->w_.reserve(total);
  g->e1_.reserve(total);
  g->e2_.reserve(total);

  for (int i = 0; i < rad.n_radial; ++i) {
    const double r = radial.nodes[i];
    const double wr = r * r * radial.weights[i];
    for (int jp = 0; jp < ang.n_polar; ++jp) {
      const double mu = polar.nodes[jp];
      const double st = std::sqrt(std::max(0.0, 1.0 - mu * mu));
      for (int ja = 0; ja < ang.n_azimuth; ++ja) {
        const double phi = wphi * ja;
        const vec3 khat(st * std::cos(phi), st * std::sin(phi), mu);
        g->khat_.push_back(khat);
        g->k_.push_back(r * khat);
        g->omega_.push_back(r);
        g->w_.push_back(wr * polar.weights[jp] * wphi);
        auto [e1, e2] = transverse_frame(khat);
        g->e1_.push_back(e1);
        g->e2_.push_back(e2);
      }
    }
  }
  return g;
}

std::shared_ptr<const kgrid> kgrid::from_nodes(
    const std::vector<vec3>& nodes, const std::vector<double>& weights) {
  if (nodes.empty()) throw config_error("kgrid: empty node list");
  if (nodes.size() != weights.size())
    throw config_error("kgrid: node/weight count mismatch");

  auto g = std::shared_ptr<kgrid>(new kgrid());
  g->k_ = nodes;
  g->w_ = weights;
  for (std::size_t n = 0; n < nodes.size(); ++n) {
    const double r = nodes[n].norm();
    if (r <= 0.0) throw config_error("kgrid: node at k = 0 is not allowed");
    if (weights[n] <= 0.0) throw config_error("kgrid: weights must be positive");
    g->omega_.push_back(r);
    const vec3 khat = nodes[n] / r;
    g->khat_.push_back(khat);
    auto [e1, e2] = transverse_frame(khat);
    g->e1_.push_back(e1);
    g->e2_.push_back(e2);
  }
  return g;
}

}  // namespace spinphoton
