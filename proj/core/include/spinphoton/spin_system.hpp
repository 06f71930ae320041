#pragma once

#include <vector>

#include "spinphoton/common.hpp"
#include "spinphoton/grid.hpp"

namespace spinphoton {

/// N fixed spin-1/2 particles in a constant external magnetic field.
struct spin_system {
  std::vector<vec3> positions;  // x_lambda, one per particle
  vec3 b_ext = vec3::Zero();

  int n_particles() const { return static_cast<int>(positions.size()); }
  int spin_dim() const { return 1 << positions.size(); }  // 2^N

  void validate() const {
    if (positions.empty())
      throw config_error("spin_system: need at least one particle");
    for (const auto& x : positions)
      if (!x.allFinite())
        throw config_error("spin_system: particle position not finite");
    if (!b_ext.allFinite())
      throw config_error("spin_system: external field not finite");
  }

  static spin_system single_at_origin(double b_magnitude) {
    spin_system s;
    s.positions = {vec3::Zero()};
    s.b_ext = vec3(0.0, 0.0, b_magnitude);
    return s;
  }
};

}  // namespace spinphoton
