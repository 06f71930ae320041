#include <cmath>

#include "doctest.h"
#include "spinphoton/field_symbols.hpp"
#include "test_helpers.hpp"

using namespace spinphoton;

TEST_CASE("bmode is transverse and has the stated structure at x = 0") {
  const auto g = small_grid();
  const auto cutoff = gaussian_cutoff();
  for (int j = 1; j <= 3; ++j) {
    const auto b = bmode(j, vec3::Zero(), g, cutoff);
    CHECK(b.transversality_residual() < 1e-13);
    CHECK(b.q().cwiseAbs().maxCoeff() == 0.0);  // e^{-ik.0} = 1 kills q
    for (std::size_t n = 0; n < g->size(); n += 11) {
      const double a = mode_amplitude(g->omega(n), cutoff);
      const vec3 want = a * g->khat(n).cross(vec3::Unit(j - 1));
      CHECK((b.p(n) - want).norm() < 1e-14);
    }
  }
}

TEST_CASE("cross-component coefficients are orthogonal") {
  const auto g = kgrid::build({32, 8.0}, {12, 24});
  const auto cutoff = gaussian_cutoff();
  const vec3 x{0.3, -0.2, 0.5};
  const auto b1 = bmode(1, x, g, cutoff);
  const auto b2 = bmode(2, x, g, cutoff);
  CHECK(std::abs(inner(b1, b2)) < 1e-10);
}

TEST_CASE("emode is the helicity image of bmode") {
  const auto g = small_grid();
  const auto cutoff = gaussian_cutoff();
  const vec3 x{0.1, 0.4, -0.2};
  for (int j = 1; j <= 3; ++j) {
    const auto b = bmode(j, x, g, cutoff);
    const auto e = emode(j, x, g, cutoff);
    CHECK(e.transversality_residual() < 1e-13);
    const phase_point diff = helicity(e) + b;  // J^2 = -Id
    CHECK(diff.q().cwiseAbs().maxCoeff() < 1e-14);
    CHECK(diff.p().cwiseAbs().maxCoeff() < 1e-14);
    CHECK(norm2(e) == doctest::Approx(norm2(b)).epsilon(1e-12));
  }
}

TEST_CASE("b_free: trivial values and the two evaluation paths") {
  const auto g = small_grid();
  const auto cutoff = gaussian_cutoff();
  auto rng = seeded_rng(29);
  const phase_point x = phase_point::random(g, rng);
  const vec3 pos{0.2, -0.1, 0.3};

  CHECK(b_free(1, pos, 0.7, phase_point(g), cutoff) == 0.0);
  for (int j = 1; j <= 3; ++j) {
    CHECK(b_free(j, pos, 0.0, x, cutoff) ==
          doctest::Approx(inner(bmode(j, pos, g, cutoff), x)).epsilon(1e-12));
    const double direct = b_free(j, pos, 1.3, x, cutoff);
    const double pullback = inner(bmode(j, pos, g, cutoff), free_evolve(x, 1.3));
    CHECK(direct == doctest::Approx(pullback).epsilon(1e-12));
  }
}

TEST_CASE("e_free trivials and t = 0 pairing") {
  const auto g = small_grid();
  const auto cutoff = gaussian_cutoff();
  auto rng = seeded_rng(31);
  const phase_point x = phase_point::random(g, rng);
  const vec3 pos{-0.3, 0.2, 0.1};

  CHECK(e_free(2, pos, 0.9, phase_point(g), cutoff) == 0.0);
  for (int j = 1; j <= 3; ++j)
    CHECK(e_free(j, pos, 0.0, x, cutoff) ==
          doctest::Approx(inner(emode(j, pos, g, cutoff), x)).epsilon(1e-12));
}

TEST_CASE("free fields satisfy vacuum Maxwell equations at a point") {
  const auto g = kgrid::build({24, 5.0}, {8, 16});
  const auto cutoff = gaussian_cutoff();
  auto rng = seeded_rng(37);
  phase_point x = phase_point::random(g, rng);
  x = x * (1.0 / std::sqrt(norm2(x)));

  const vec3 pos{0.15, -0.25, 0.05};
  const double t = 0.8, dt = 1e-4, dx = 1e-3;

  auto bvec = [&](const vec3& at, double tt) {
    return vec3{b_free(1, at, tt, x, cutoff), b_free(2, at, tt, x, cutoff),
                b_free(3, at, tt, x, cutoff)};
  };
  auto evec = [&](const vec3& at, double tt) {
    return vec3{e_free(1, at, tt, x, cutoff), e_free(2, at, tt, x, cutoff),
                e_free(3, at, tt, x, cutoff)};
  };
  auto curl = [&](auto&& field, const vec3& at, double tt) {
    mat3 jac;  // jac(i, c) = d field_i / d x_c
    for (int c = 0; c < 3; ++c) {
      vec3 h = vec3::Zero();
      h[c] = dx;
      jac.col(c) = (field(at + h, tt) - field(at - h, tt)) / (2.0 * dx);
    }
    return vec3{jac(2, 1) - jac(1, 2), jac(0, 2) - jac(2, 0),
                jac(1, 0) - jac(0, 1)};
  };

  const vec3 db_dt = (bvec(pos, t + dt) - bvec(pos, t - dt)) / (2.0 * dt);
  const vec3 de_dt = (evec(pos, t + dt) - evec(pos, t - dt)) / (2.0 * dt);
  const vec3 faraday = db_dt + curl(evec, pos, t);
  const vec3 ampere = de_dt - curl(bvec, pos, t);
  CHECK(faraday.cwiseAbs().maxCoeff() < 1e-6);
  CHECK(ampere.cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("polarized symbols collapse to +-E on polarized states") {
  const auto g = small_grid();
  const auto cutoff = gaussian_cutoff();
  const vec3 pos{0.0, 0.0, 0.0};

  // plus state: q = f e1, p = -f e2 per node
  phase_point plus(g), minus(g);
  for (std::size_t n = 0; n < g->size(); ++n) {
    const double f = std::exp(-0.5 * g->omega(n) * g->omega(n));
    plus.set_node(n, f * g->e1(n), -f * g->e2(n));
    minus.set_node(n, f * g->e1(n), f * g->e2(n));
  }
  for (int j = 1; j <= 3; ++j) {
    CHECK(pol_free(field_kind::electric, j, pos, 0.9, plus, cutoff) ==
          doctest::Approx(e_free(j, pos, 0.9, plus, cutoff)).epsilon(1e-12));
    CHECK(pol_free(field_kind::electric, j, pos, 0.9, minus, cutoff) ==
          doctest::Approx(-e_free(j, pos, 0.9, minus, cutoff)).epsilon(1e-12));
  }
  CHECK(pol_free(field_kind::magnetic, 1, pos, 0.5, phase_point(g), cutoff) ==
        0.0);
}

TEST_CASE("symbol evaluations are linear and projector-complete") {
  const auto g = small_grid();
  const auto cutoff = gaussian_cutoff();
  auto rng = seeded_rng(41);
  const phase_point x = phase_point::random(g, rng);
  const phase_point y = phase_point::random(g, rng);
  const vec3 pos{0.1, 0.0, -0.4};

  const double scale = std::abs(b_free(2, pos, 0.6, x, cutoff)) +
                       std::abs(b_free(2, pos, 0.6, y, cutoff)) + 1.0;
  CHECK(std::abs(b_free(2, pos, 0.6, x + y, cutoff) -
                 b_free(2, pos, 0.6, x, cutoff) -
                 b_free(2, pos, 0.6, y, cutoff)) < 1e-12 * scale);

  const phase_point resolved = polar_project(x, polarization::plus) +
                               polar_project(x, polarization::minus);
  CHECK(pol_free(field_kind::electric, 3, pos, 1.1, resolved, cutoff) ==
        doctest::Approx(pol_free(field_kind::electric, 3, pos, 1.1, x, cutoff))
            .epsilon(1e-12));
}

TEST_CASE("mode correlator: orthogonality, parity, 3d cross-check") {
  const auto cutoff = gaussian_cutoff();
  const vec3 pos = vec3::Zero();

  CHECK(mode_correlator(1, 2, pos, 0.4, 0.1, cutoff) == 0.0);
  CHECK(mode_correlator(1, 1, pos, 0.9, 0.2, cutoff) ==
        doctest::Approx(mode_correlator(1, 1, pos, 0.2, 0.9, cutoff))
            .epsilon(1e-13));

  // 1d radial reduction vs the full 3d grid pairing, m = n, t = s
  const auto g = kgrid::build({32, 8.0}, {12, 24});
  for (int m = 1; m <= 3; ++m) {
    const auto b = bmode(m, pos, g, cutoff);
    CHECK(std::abs(mode_correlator(m, m, pos, 0.0, 0.0, cutoff) -
                   inner(b, b)) < 1e-9);
  }

  // lag consistency: B_{m,x,tau} . B_{m,x,0} via the grid
  const double tau = 0.7;
  const auto b1 = bmode(1, pos, g, cutoff);
  const double via_grid = inner(free_evolve(b1, -tau), b1);
  CHECK(std::abs(via_grid - mode_correlator(1, 1, pos, tau, 0.0, cutoff)) <
        1e-9);
}

TEST_CASE("qt_form: trivial zeros and quadratic scaling") {
  const auto g = small_grid();
  const auto cutoff = gaussian_cutoff();
  const spin_system sys = spin_system::single_at_origin(1.0);
  auto rng = seeded_rng(43);
  const phase_point v = phase_point::random(g, rng);

  CHECK(qt_form(phase_point(g), 1.0, sys, cutoff) == 0.0);
  CHECK(qt_form(v, 0.0, sys, cutoff) == 0.0);

  const double q1 = qt_form(v, 1.2, sys, cutoff);
  const double q2 = qt_form(v * 2.0, 1.2, sys, cutoff);
  CHECK(q2 == doctest::Approx(4.0 * q1).epsilon(1e-12));
  CHECK(q1 >= 0.0);

  // negative times integrate over [t, 0] and stay nonnegative
  CHECK(qt_form(v, -0.8, sys, cutoff) >= 0.0);
}
