#pragma once

#include <random>

#include "spinphoton/cutoff.hpp"
#include "spinphoton/grid.hpp"
#include "spinphoton/phase_point.hpp"

namespace sp = spinphoton;

inline sp::radial_cutoff gaussian_cutoff(double lambda = 1.0,
                                         double amplitude = 1.0) {
  sp::radial_cutoff c;
  c.kind = sp::radial_cutoff::profile::gaussian;
  c.scale = lambda;
  c.amplitude = amplitude;
  return c;
}

inline sp::grid_ptr small_grid(int n_radial = 24, double max_r = 8.0,
                               int n_polar = 8, int n_azimuth = 16) {
  return sp::kgrid::build({n_radial, max_r}, {n_polar, n_azimuth});
}

inline std::mt19937 seeded_rng(unsigned seed = 0x5eed) {
  return std::mt19937(seed);
}
