#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cvxjet/envelope.hpp"

#include <algorithm>
#include <cmath>
#include <random>

using namespace cvxjet;

namespace {

// O(N*M) conjugate oracle for the piecewise-linear interpolant
std::vector<double> legendre_oracle(const std::vector<double>& x,
                                    const std::vector<double>& f,
                                    const std::vector<double>& s) {
  std::vector<double> out(s.size(), -std::numeric_limits<double>::infinity());
  for (size_t j = 0; j < s.size(); ++j)
    for (size_t i = 0; i < x.size(); ++i)
      out[j] = std::max(out[j], s[j] * x[i] - f[i]);
  return out;
}

Vector vec1(double x) {
  Vector v(1);
  v << x;
  return v;
}

Vector vec2(double x, double y) {
  Vector v(2);
  v << x, y;
  return v;
}

}  // namespace

TEST_CASE("1D transform equals the dense max oracle") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int trial = 0; trial < 40; ++trial) {
    int n = 5 + static_cast<int>(rng() % 60);
    std::vector<double> x(n), f(n);
    for (int i = 0; i < n; ++i) x[i] = -1.0 + 2.0 * i / (n - 1);
    for (int i = 0; i < n; ++i) f[i] = u(rng);
    std::vector<double> s(31);
    for (int j = 0; j < 31; ++j) s[j] = -3.0 + 0.2 * j;
    std::vector<double> fast = legendre_1d(x, f, s);
    std::vector<double> slow = legendre_oracle(x, f, s);
    for (int j = 0; j < 31; ++j)
      CHECK(fast[j] == doctest::Approx(slow[j]).epsilon(1e-10));
  }
}

TEST_CASE("biconjugate pins a convex grid function up to dual resolution") {
  auto f = [](const Vector& x) { return 0.5 * x.squaredNorm(); };
  GridFunction g = GridFunction::sample(f, vec2(-2, -2), vec2(2, 2), {41, 41});
  GridFunction env = discrete_legendre(discrete_legendre(g), g.lo, g.hi, g.res);
  // a convex function is a fixed point up to the dual-grid quantization of
  // its subgradients: never above, and below by at most O(ds^2)
  for (size_t i = 0; i < g.values.size(); ++i) {
    CHECK(env.values[i] <= g.values[i] + 1e-12);
    CHECK(env.values[i] >= g.values[i] - 2e-3);
  }
}

TEST_CASE("biconjugate of two parabolas builds the common tangent bridge") {
  // min((x-1)^2, (x+1)^2) has convex envelope 0 on [-1, 1]
  auto f = [](const Vector& x) {
    double a = x[0] - 1.0, b = x[0] + 1.0;
    return std::min(a * a, b * b);
  };
  GridBiconjugate env(f, vec1(-3.0), vec1(3.0), {601});
  auto closed = [](double x) {
    double t = std::max(std::abs(x) - 1.0, 0.0);
    return t * t;
  };
  for (double x = -2.9; x <= 2.9; x += 0.037)
    CHECK(env.eval(vec1(x)) == doctest::Approx(closed(x)).epsilon(5e-4));
}

TEST_CASE("grid envelope matches a dense lower-hull oracle in 1D") {
  auto f = [](const Vector& x) {
    return std::cos(3.0 * x[0]) + 0.1 * x[0] * x[0];
  };
  Vector lo = vec1(-3.0), hi = vec1(3.0);
  GridBiconjugate env(f, lo, hi, {501});
  // oracle: Andrew-style lower convex hull over the dense sample
  const int n = 501;
  std::vector<double> xs(n), fs(n);
  for (int i = 0; i < n; ++i) {
    xs[i] = -3.0 + 6.0 * i / (n - 1);
    fs[i] = f(vec1(xs[i]));
  }
  std::vector<int> hull;
  for (int i = 0; i < n; ++i) {
    while (hull.size() >= 2) {
      int a = hull[hull.size() - 2], b = hull.back();
      if ((fs[b] - fs[a]) * (xs[i] - xs[b]) <=
          (fs[i] - fs[b]) * (xs[b] - xs[a]))
        break;
      hull.pop_back();
    }
    hull.push_back(i);
  }
  auto hull_eval = [&](double x) {
    for (size_t k = 0; k + 1 < hull.size(); ++k) {
      double xa = xs[hull[k]], xb = xs[hull[k + 1]];
      if (x >= xa - 1e-12 && x <= xb + 1e-12) {
        double t = (x - xa) / (xb - xa);
        return (1 - t) * fs[hull[k]] + t * fs[hull[k + 1]];
      }
    }
    return fs[hull.back()];
  };
  for (double x = -2.95; x <= 2.95; x += 0.041)
    CHECK(env.eval(vec1(x)) == doctest::Approx(hull_eval(x)).epsilon(1e-6));
}

namespace {
JetEnvelope::Kernel quadratic_kernel() {
  return {[](double t) { return 0.5 * t * t; },
          [](double s) { return 0.5 * s * s; }, [](double s) { return s; }};
}
}  // namespace

TEST_CASE("single-piece envelope is the piece itself") {
  std::vector<Vector> pts = {vec2(0.5, -0.3)};
  std::vector<Vector> xis = {vec2(0.6, 0.8)};
  JetEnvelope env(pts, xis, NormSpace::euclidean(2), quadratic_kernel());
  std::mt19937_64 rng(42);
  std::normal_distribution<double> g(0.0, 1.0);
  for (int i = 0; i < 60; ++i) {
    Vector x = vec2(g(rng), g(rng));
    auto ev = env.envelope(x);
    CHECK(ev.value == doctest::Approx(env.eval_g(x)).epsilon(1e-8));
    // gradient of 1 + <xi, x-y> + |x-y|^2/2 is xi + (x - y)
    CHECK((ev.maximizer - (xis[0] + (x - pts[0]))).norm() < 1e-6);
  }
}

TEST_CASE("multi-piece envelope: convex minorant matching the grid backend") {
  std::mt19937_64 rng(43);
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<Vector> pts, xis;
  for (int i = 0; i < 6; ++i) {
    double th = 2.0 * std::acos(-1.0) * i / 6.0;
    pts.push_back(vec2(std::cos(th), std::sin(th)));
    xis.push_back(vec2(std::cos(th), std::sin(th)));
  }
  JetEnvelope env(pts, xis, NormSpace::euclidean(2), quadratic_kernel());
  GridBiconjugate grid([&](const Vector& x) { return env.eval_g(x); },
                       vec2(-3, -3), vec2(3, 3), {201, 201});
  double cell = 6.0 / 200.0;
  for (int i = 0; i < 100; ++i) {
    Vector x = vec2(g(rng), g(rng));
    Vector y = vec2(g(rng), g(rng));
    double hx = env.envelope(x).value;
    CHECK(hx <= env.eval_g(x) + 1e-10);
    // midpoint convexity
    double hm = env.envelope(0.5 * (x + y)).value;
    CHECK(hm <= 0.5 * (hx + env.envelope(y).value) + 1e-8);
    if (x.cwiseAbs().maxCoeff() < 2.5)
      CHECK(std::abs(hx - grid.eval(x)) < std::max(1e-4, 8.0 * cell));
  }
}

TEST_CASE("cross-validation flags a mismatched grid") {
  std::vector<Vector> pts = {vec2(0, 0)};
  std::vector<Vector> xis = {vec2(1, 0)};
  JetEnvelope env(pts, xis, NormSpace::euclidean(2), quadratic_kernel());
  GridBiconjugate wrong([&](const Vector& x) { return env.eval_g(x) + 0.5; },
                        vec2(-2, -2), vec2(2, 2), {51, 51});
  CHECK_THROWS_AS(cross_validate(env, wrong, {vec2(0.3, 0.1)}, 1e-3),
                  NumericalError);
  GridBiconjugate right([&](const Vector& x) { return env.eval_g(x); },
                        vec2(-2, -2), vec2(2, 2), {201, 201});
  CHECK(cross_validate(env, right, {vec2(0.3, 0.1), vec2(-1.0, 0.7)}, 1e-2) <
        1e-2);
}
