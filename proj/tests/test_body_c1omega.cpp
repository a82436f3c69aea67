#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cvxjet/body_c1omega.hpp"
#include "cvxjet/fixtures.hpp"

#include <cmath>
#include <random>

using namespace cvxjet;

namespace {
Vector rand_in_box(std::mt19937_64& rng, const Vector& lo, const Vector& hi) {
  Vector x(lo.size());
  for (int i = 0; i < lo.size(); ++i) {
    std::uniform_real_distribution<double> u(lo[i], hi[i]);
    x[i] = u(rng);
  }
  return x;
}
}  // namespace

TEST_CASE("modulus-variant construction identities on the circle") {
  TangencyProblem p = fixtures::sphere(16, 2);
  ModulusCalculus mc(Modulus::power(1.0, 1.0));  // omega(t) = t
  const double delta = 0.4;
  BodyC1Omega body = BodyC1Omega::build_hilbert(p, mc, delta);

  for (const auto& d : p.data) {
    CHECK(body.eval_F(d.point) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK((body.grad_F(d.point) - d.normal).norm() < 1e-6);
  }
  // phi = t^2/2, phi* = s^2/2: inf F = 1 - delta/2 at the rolled-in points
  CHECK(body.inner_depth() == doctest::Approx(delta));
  CHECK(body.min_value() == doctest::Approx(1.0 - 0.5 * delta));
  for (int i = 0; i < static_cast<int>(p.data.size()); ++i)
    CHECK(body.eval_F(body.minimizer_point(i)) ==
          doctest::Approx(body.min_value()).epsilon(1e-9));
}

TEST_CASE("dual-exponent variant identities on the circle") {
  TangencyProblem p = fixtures::sphere(16, 2);
  const double alpha = 0.5, delta = 0.1;
  BodyC1Omega body = BodyC1Omega::build_dual_alpha(p, alpha, delta);
  CHECK(body.min_value() == doctest::Approx(1.0 - delta));
  CHECK(body.big_m() ==
        doctest::Approx(std::pow(alpha / ((1.0 + alpha) * delta), alpha)));
  for (const auto& d : p.data) {
    CHECK(body.eval_F(d.point) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK((body.grad_F(d.point) - d.normal).norm() < 1e-6);
  }
  for (int i = 0; i < static_cast<int>(p.data.size()); ++i)
    CHECK(body.eval_F(body.minimizer_point(i)) ==
          doctest::Approx(body.min_value()).epsilon(1e-9));
}

TEST_CASE("F is convex and the gradient matches finite differences") {
  TangencyProblem p = fixtures::random_convex({1.5, 1.0}, 18, 0.0, 2);
  ModulusCalculus mc(Modulus::power(1.0, 0.5));
  double delta = 0.5 * max_c1omega_delta(p, mc);
  BodyC1Omega body = BodyC1Omega::build_hilbert(p, mc, delta);
  std::mt19937_64 rng(51);
  Vector lo = body.box_lo() + 0.05 * (body.box_hi() - body.box_lo());
  Vector hi = body.box_hi() - 0.05 * (body.box_hi() - body.box_lo());
  const double h = 1e-6;
  int fd_checked = 0;
  for (int trial = 0; trial < 80; ++trial) {
    Vector x = rand_in_box(rng, lo, hi);
    Vector y = rand_in_box(rng, lo, hi);
    CHECK(body.eval_F(0.5 * (x + y)) <=
          0.5 * (body.eval_F(x) + body.eval_F(y)) + 1e-8);
    if (body.distance_to_A(x) < 1e-3) continue;  // d_A kink near A itself
    Vector grad = body.grad_F(x), fd(x.size());
    for (int i = 0; i < x.size(); ++i) {
      Vector e = Vector::Zero(x.size());
      e[i] = h;
      fd[i] = (body.eval_F(x + e) - body.eval_F(x - e)) / (2.0 * h);
    }
    // on envelope bridges the dual maximum is very flat, so the maximizer
    // (the gradient) is resolvable only to ~1e-3 even when values are exact
    CHECK((grad - fd).norm() < 5e-3);
    ++fd_checked;
  }
  CHECK(fd_checked > 20);
}

TEST_CASE("level-set samples sit on {F = 1} and respect the gradient floor") {
  TangencyProblem p = fixtures::sphere(12, 2);
  ModulusCalculus mc(Modulus::power(1.0, 1.0));
  const double delta = 0.5;  // the sharp constant for the circle
  BodyC1Omega body = BodyC1Omega::build_hilbert(p, mc, delta);
  for (const auto& s : body.sample_boundary(40, 99))
    CHECK(body.eval_F(s) == doctest::Approx(1.0).epsilon(1e-7));
  LevelSetBoundsReport rep = body.level_set_bounds_check(60, 7);
  // phi(t) = t^2/2: reach phi^{-1}(1) = sqrt(2), rolled depth delta
  double expected = (0.5 * delta) / (std::sqrt(2.0) + delta);
  CHECK(rep.lower_bound == doctest::Approx(expected).epsilon(1e-12));
  CHECK(rep.lower_ok);
  CHECK(rep.grad_min >= rep.lower_bound - 1e-9);
}

TEST_CASE("grid backend agrees with the direct backend") {
  TangencyProblem p = fixtures::sphere(10, 2);
  BodyC1Omega body = BodyC1Omega::build_dual_alpha(p, 0.5, 0.1);
  GridBiconjugate grid = body.make_grid_backend(161);
  double cell = 0.0;
  for (int a = 0; a < 2; ++a)
    cell = std::max(cell, grid.grid().spacing(a));
  std::mt19937_64 rng(52);
  std::vector<Vector> queries;
  for (int i = 0; i < 50; ++i)
    queries.push_back(rand_in_box(rng, body.box_lo(), body.box_hi()));
  CHECK_NOTHROW(
      cross_validate(body.jet(), grid, queries, std::max(1e-4, 8.0 * cell)));
}

TEST_CASE("construction refuses infeasible margins") {
  TangencyProblem p = fixtures::sphere(16, 2);
  ModulusCalculus mc(Modulus::power(1.0, 1.0));
  CHECK_THROWS_AS(BodyC1Omega::build_hilbert(p, mc, 0.51), InfeasibleError);
  CHECK_THROWS_AS(BodyC1Omega::build_dual_alpha(p, 0.5, 0.26),
                  InfeasibleError);
}

TEST_CASE("reassembly from stored parts reproduces the field") {
  TangencyProblem p = fixtures::sphere(12, 2);
  ModulusCalculus mc(Modulus::power(2.0, 0.5));
  double delta = 0.5 * max_c1omega_delta(p, mc);
  BodyC1Omega a = BodyC1Omega::build_hilbert(p, mc, delta);
  BodyC1Omega b = BodyC1Omega::from_parts(p, C1OmegaVariant::HilbertOmega,
                                          mc.modulus(), delta, 1.0);
  std::mt19937_64 rng(53);
  for (int i = 0; i < 40; ++i) {
    Vector x = rand_in_box(rng, a.box_lo(), a.box_hi());
    CHECK(a.eval_F(x) == doctest::Approx(b.eval_F(x)).epsilon(1e-10));
  }
}
