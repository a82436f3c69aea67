#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cvxjet/modulus.hpp"

#include <cmath>
#include <random>

using namespace cvxjet;

TEST_CASE("adaptive Simpson on known integrals") {
  CHECK(adaptive_simpson([](double t) { return std::sin(t); }, 0.0,
                         std::acos(-1.0), 1e-12) == doctest::Approx(2.0));
  CHECK(adaptive_simpson([](double t) { return std::sqrt(t); }, 0.0, 4.0,
                         1e-12) == doctest::Approx(16.0 / 3.0).epsilon(1e-9));
}

TEST_CASE("power modulus closed forms agree with quadrature") {
  for (double K : {0.5, 1.0, 2.0})
    for (double alpha : {0.25, 0.5, 1.0}) {
      ModulusCalculus mc(Modulus::power(K, alpha));
      for (double t : {0.1, 0.7, 1.3, 4.0}) {
        double phi_q = adaptive_simpson(
            [&](double u) { return K * std::pow(u, alpha); }, 0.0, t, 1e-12);
        CHECK(mc.phi(t) == doctest::Approx(phi_q).epsilon(1e-9));
        CHECK(mc.omega(t) == doctest::Approx(K * std::pow(t, alpha)));
        CHECK(mc.omega_inverse(mc.omega(t)) == doctest::Approx(t).epsilon(1e-10));
        CHECK(mc.phi_inverse(mc.phi(t)) == doctest::Approx(t).epsilon(1e-9));
      }
      for (double s : {0.2, 0.9, 2.5}) {
        double conj_q = adaptive_simpson(
            [&](double u) { return std::pow(u / K, 1.0 / alpha); }, 0.0, s,
            1e-12);
        CHECK(mc.phi_conjugate(s) == doctest::Approx(conj_q).epsilon(1e-8));
      }
    }
}

TEST_CASE("Young-type identity phi(w^{-1}(d)) + phi*(d) = d w^{-1}(d)") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(0.01, 3.0);
  for (double K : {0.5, 1.0, 2.0})
    for (double alpha : {0.25, 0.5, 1.0}) {
      ModulusCalculus mc(Modulus::power(K, alpha));
      for (int i = 0; i < 100; ++i) {
        double d = u(rng);
        double t = mc.omega_inverse(d);
        CHECK(mc.phi(t) + mc.phi_conjugate(d) ==
              doctest::Approx(d * t).epsilon(1e-8));
      }
    }
}

TEST_CASE("the three growth inequalities hold on sampled arguments") {
  std::vector<Modulus> mods = {Modulus::power(1.0, 0.5),
                               Modulus::power(2.0, 0.25),
                               Modulus::tabulated({0.0, 0.5, 1.0, 2.0, 5.0},
                                                  {0.0, 0.8, 1.2, 1.7, 2.6})};
  std::mt19937_64 rng(22);
  std::uniform_real_distribution<double> u(1e-3, 4.0);
  for (const auto& m : mods) {
    ModulusCalculus mc(m);
    for (int i = 0; i < 1000; ++i) {
      double t = u(rng);
      CHECK(mc.phi(2.0 * t) > t * mc.omega(t));
      CHECK(2.0 * t * mc.omega(t) >= mc.phi(2.0 * t) - 1e-12);
      CHECK(mc.phi(t) >= 0.5 * t * mc.omega(0.5 * t) - 1e-12);
    }
  }
}

TEST_CASE("tabulated modulus: exact piecewise-linear integral oracle") {
  std::vector<double> t = {0.0, 1.0, 2.0, 4.0};
  std::vector<double> w = {0.0, 1.0, 1.5, 2.0};
  ModulusCalculus mc(Modulus::tabulated(t, w));
  // integral of the interpolant, accumulated trapezoid by trapezoid
  auto exact_phi = [&](double x) {
    double acc = 0.0, prev_t = 0.0, prev_w = 0.0;
    for (size_t i = 1; i < t.size() && prev_t < x; ++i) {
      double seg_end = std::min(t[i], x);
      double w_end = prev_w + (w[i] - prev_w) * (seg_end - prev_t) /
                                  (t[i] - prev_t);
      acc += 0.5 * (prev_w + w_end) * (seg_end - prev_t);
      prev_t = seg_end;
      prev_w = w_end;
    }
    if (x > t.back()) {
      double slope = (w[3] - w[2]) / (t[3] - t[2]);
      double w_end = w.back() + slope * (x - t.back());
      acc += 0.5 * (w.back() + w_end) * (x - t.back());
    }
    return acc;
  };
  for (double x : {0.3, 1.0, 1.7, 3.9, 6.2})
    CHECK(mc.phi(x) == doctest::Approx(exact_phi(x)).epsilon(1e-9));
  for (double s : {0.4, 1.2, 1.9, 2.4}) {
    double ti = mc.omega_inverse(s);
    CHECK(mc.omega(ti) == doctest::Approx(s).epsilon(1e-10));
    CHECK(mc.phi(ti) + mc.phi_conjugate(s) ==
          doctest::Approx(s * ti).epsilon(1e-7));
  }
}

TEST_CASE("tabulated validation rejects malformed samples") {
  CHECK_THROWS_AS(Modulus::tabulated({0.5, 1.0}, {0.1, 0.2}),
                  std::invalid_argument);  // must start at (0, 0)
  CHECK_THROWS_AS(Modulus::tabulated({0.0, 1.0, 2.0}, {0.0, 1.0, 0.9}),
                  std::invalid_argument);  // not increasing
  CHECK_THROWS_AS(Modulus::tabulated({0.0, 1.0, 2.0}, {0.0, 0.5, 1.5}),
                  std::invalid_argument);  // convex kink, not concave
  CHECK_THROWS_AS(Modulus::power(1.0, 1.5), std::invalid_argument);
  CHECK_THROWS_AS(Modulus::power(-1.0, 0.5), std::invalid_argument);
}
