#pragma once

#include <cmath>
#include <string>

#include "spinphoton/common.hpp"

namespace spinphoton {

/// Smooth, rapidly decaying radial weight suppressing high-frequency modes.
/// Every field coefficient carries one of these, so all momentum integrals
/// converge. The profile is a run parameter and is reported in every output
/// header.
struct radial_cutoff {
  enum class profile { gaussian, compact_bump };

  profile kind = profile::gaussian;
  double scale = 1.0;      // wavenumber scale Lambda
  double amplitude = 1.0;  // dimensionless prefactor

  double operator()(double r) const {
    const double z = r / scale;
    switch (kind) {
      case profile::gaussian:
        return amplitude * std::exp(-0.5 * z * z);
      case profile::compact_bump:
        // exp(-z^2/(1-z^2)) on [0, scale), identically zero beyond; C-infinity.
        if (z >= 1.0) return 0.0;
        return amplitude * std::exp(-z * z / (1.0 - z * z));
    }
    return 0.0;
  }

  void validate() const {
    if (scale <= 0.0) throw config_error("cutoff: scale must be positive");
    if (amplitude < 0.0) throw config_error("cutoff: amplitude must be >= 0");
  }

  std::string kind_name() const {
    return kind == profile::gaussian ? "gaussian" : "compact-bump";
  }
};

}  // namespace spinphoton
