#include <cmath>
#include <numbers>

#include "doctest.h"
#include "spinphoton/phase_point.hpp"
#include "spinphoton/summation.hpp"
#include "test_helpers.hpp"

using namespace spinphoton;

namespace {

double grid_integral(const kgrid& g, const std::function<double(vec3)>& f) {
  std::vector<double> terms(g.size());
  for (std::size_t n = 0; n < g.size(); ++n)
    terms[n] = g.weight(n) * f(g.k(n));
  return pairwise_sum(terms);
}

}  // namespace

TEST_CASE("build_grid rejects invalid sizes") {
  CHECK_THROWS_AS(kgrid::build({1, 8.0}, {4, 8}), config_error);
  CHECK_THROWS_AS(kgrid::build({8, -1.0}, {4, 8}), config_error);
  CHECK_THROWS_AS(kgrid::build({8, 8.0}, {0, 8}), config_error);
}

TEST_CASE("grid integrates the Gaussian to pi^{3/2}") {
  const auto g = kgrid::build({40, 8.0}, {20, 40});
  const double got =
      grid_integral(*g, [](vec3 k) { return std::exp(-k.squaredNorm()); });
  const double want = std::pow(std::numbers::pi, 1.5);
  CHECK(std::abs(got - want) < 1e-8);

  // doubling the radial count moves the value by < 1e-10
  const auto g2 = kgrid::build({80, 8.0}, {20, 40});
  const double got2 =
      grid_integral(*g2, [](vec3 k) { return std::exp(-k.squaredNorm()); });
  CHECK(std::abs(got - got2) < 1e-10);
}

TEST_CASE("total weight reproduces the truncated ball volume") {
  const auto g = kgrid::build({40, 8.0}, {20, 40});
  const double got = grid_integral(*g, [](vec3) { return 1.0; });
  const double want = 4.0 / 3.0 * std::numbers::pi * 8.0 * 8.0 * 8.0;
  CHECK(std::abs(got - want) < 1e-8);
}

TEST_CASE("node frames are orthonormal and right-handed") {
  const auto g = small_grid();
  for (std::size_t n = 0; n < g->size(); n += 7) {
    CHECK(std::abs(g->e1(n).dot(g->khat(n))) < 1e-14);
    CHECK(std::abs(g->e2(n).dot(g->khat(n))) < 1e-14);
    CHECK(std::abs(g->e1(n).dot(g->e2(n))) < 1e-14);
    CHECK(std::abs(g->e1(n).norm() - 1.0) < 1e-14);
    CHECK(std::abs(g->e2(n).norm() - 1.0) < 1e-14);
    CHECK((g->e1(n).cross(g->e2(n)) - g->khat(n)).norm() < 1e-14);
  }
}

TEST_CASE("inner product basics") {
  const auto g = small_grid();
  auto rng = seeded_rng();
  const phase_point zero(g);
  const phase_point x = phase_point::random(g, rng);
  const phase_point y = phase_point::random(g, rng);

  CHECK(inner(zero, zero) == 0.0);
  CHECK(inner(x, y) == doctest::Approx(inner(y, x)).epsilon(1e-14));
  CHECK(norm2(x) > 0.0);

  const auto other = small_grid();
  const phase_point w(other);
  CHECK_THROWS_AS(inner(x, w), config_error);
}

TEST_CASE("inner of Gaussian-profile transverse fields matches the radial closed form") {
  const auto g = kgrid::build({40, 8.0}, {12, 24});
  phase_point x(g), y(g);
  for (std::size_t n = 0; n < g->size(); ++n) {
    const double r = g->omega(n);
    x.set_node(n, std::exp(-0.5 * r * r) * g->e1(n), vec3::Zero());
    y.set_node(n, std::exp(-r * r) * g->e1(n), vec3::Zero());
  }
  // int f g dk = 4 pi int r^2 e^{-3 r^2/2} dr = pi^{3/2} (2/3)^{3/2}
  const double want =
      std::pow(std::numbers::pi, 1.5) * std::pow(2.0 / 3.0, 1.5);
  CHECK(std::abs(inner(x, y) - want) < 1e-8);
}

TEST_CASE("helicity squares to minus the identity and is an isometry") {
  const auto g = small_grid();
  auto rng = seeded_rng(7);
  const phase_point x = phase_point::random(g, rng);
  const phase_point y = phase_point::random(g, rng);

  const phase_point jjx = helicity(helicity(x));
  const phase_point diff = jjx + x;
  CHECK(diff.q().cwiseAbs().maxCoeff() < 1e-14);
  CHECK(diff.p().cwiseAbs().maxCoeff() < 1e-14);

  const phase_point zero(g);
  CHECK(norm2(helicity(zero)) == 0.0);

  CHECK(inner(helicity(x), helicity(y)) ==
        doctest::Approx(inner(x, y)).epsilon(1e-13));
  CHECK(helicity(x).transversality_residual() < 1e-13);
}

TEST_CASE("polarization projectors resolve the identity and are idempotent") {
  const auto g = small_grid();
  auto rng = seeded_rng(11);
  const phase_point x = phase_point::random(g, rng);

  const phase_point plus = polar_project(x, polarization::plus);
  const phase_point minus = polar_project(x, polarization::minus);

  const phase_point sum_diff = plus + minus - x;
  CHECK(sum_diff.q().cwiseAbs().maxCoeff() < 1e-14);
  CHECK(sum_diff.p().cwiseAbs().maxCoeff() < 1e-14);

  const phase_point pp = polar_project(plus, polarization::plus) - plus;
  CHECK(pp.q().cwiseAbs().maxCoeff() < 1e-14);
  CHECK(pp.p().cwiseAbs().maxCoeff() < 1e-14);

  const phase_point cross = polar_project(plus, polarization::minus);
  CHECK(cross.q().cwiseAbs().maxCoeff() < 1e-14);
  CHECK(cross.p().cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("membership condition at a single node") {
  // q = e1, p = -khat x e1 = -e2 solves k x q = -|k| p: pure plus state
  const auto g = small_grid();
  phase_point x(g);
  const std::size_t n = g->size() / 2;
  x.set_node(n, g->e1(n), -g->e2(n));

  const phase_point plus = polar_project(x, polarization::plus);
  const phase_point minus = polar_project(x, polarization::minus);
  CHECK((plus.q(n) - x.q(n)).norm() < 1e-14);
  CHECK((plus.p(n) - x.p(n)).norm() < 1e-14);
  CHECK(minus.q(n).norm() < 1e-14);
  CHECK(minus.p(n).norm() < 1e-14);
}

TEST_CASE("plus-minus projector difference equals -F o J") {
  const auto g = small_grid();
  auto rng = seeded_rng(13);
  const phase_point x = phase_point::random(g, rng);
  const phase_point lhs = polar_project(x, polarization::plus) -
                          polar_project(x, polarization::minus);
  const phase_point rhs = fmap(helicity(x)) * -1.0;
  const phase_point diff = lhs - rhs;
  CHECK(diff.q().cwiseAbs().maxCoeff() < 1e-13);
  CHECK(diff.p().cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("free evolution is the identity at t = 0, unitary, and a group") {
  const auto g = small_grid();
  auto rng = seeded_rng(17);
  const phase_point x = phase_point::random(g, rng);

  const phase_point same = free_evolve(x, 0.0) - x;
  CHECK(same.q().cwiseAbs().maxCoeff() == 0.0);

  const double t = 1.37;
  CHECK(inner(free_evolve(x, t), free_evolve(x, t)) ==
        doctest::Approx(norm2(x)).epsilon(1e-12));

  const phase_point round = free_evolve(free_evolve(x, t), -t) - x;
  CHECK(round.q().cwiseAbs().maxCoeff() < 1e-12);
  CHECK(round.p().cwiseAbs().maxCoeff() < 1e-12);

  const phase_point grp =
      free_evolve(free_evolve(x, 0.4), 0.9) - free_evolve(x, 1.3);
  CHECK(grp.q().cwiseAbs().maxCoeff() < 1e-12);

  CHECK(free_evolve(x, t).transversality_residual() < 1e-13);
}

TEST_CASE("fmap rotates the pair and preserves the inner product") {
  const auto g = small_grid();
  auto rng = seeded_rng(19);
  const phase_point x = phase_point::random(g, rng);
  const phase_point y = phase_point::random(g, rng);

  const phase_point ffx = fmap(fmap(x)) + x;
  CHECK(ffx.q().cwiseAbs().maxCoeff() == 0.0);
  CHECK(norm2(fmap(phase_point(g))) == 0.0);
  CHECK(inner(fmap(x), fmap(y)) == doctest::Approx(inner(x, y)).epsilon(1e-13));
  CHECK(fmap(x).transversality_residual() < 1e-13);
}

TEST_CASE("pairwise summation is order-insensitive at 1e-13") {
  auto rng = seeded_rng(23);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  std::vector<double> v(40000);
  for (auto& x : v) x = uni(rng) * std::exp(8.0 * uni(rng));
  const double fwd = pairwise_sum(v);
  std::vector<double> rev(v.rbegin(), v.rend());
  const double bwd = pairwise_sum(rev);
  double scale = 0.0;
  for (double x : v) scale += std::abs(x);
  CHECK(std::abs(fwd - bwd) < 1e-13 * scale);
}

TEST_CASE("transverse constructor validates") {
  const auto g = small_grid();
  Eigen::Matrix3Xd q = Eigen::Matrix3Xd::Zero(3, g->size());
  Eigen::Matrix3Xd p = Eigen::Matrix3Xd::Zero(3, g->size());
  q.col(0) = g->khat(0);  // deliberately longitudinal
  CHECK_THROWS_AS(phase_point::transverse(g, q, p), numeric_error);
  q.col(0) = g->e1(0);
  CHECK_NOTHROW(phase_point::transverse(g, q, p));
}
