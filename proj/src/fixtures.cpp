#include "cvxjet/fixtures.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace cvxjet {
namespace fixtures {

TangencyProblem sphere(int n_points, int dimension, double radius) {
  if (n_points < 1) throw std::invalid_argument("sphere: n_points >= 1");
  if (dimension != 2 && dimension != 3)
    throw std::invalid_argument("sphere: dimension 2 or 3");
  if (!(radius > 0.0)) throw std::invalid_argument("sphere: radius > 0");
  TangencyProblem pr;
  pr.space = NormSpace::euclidean(dimension);
  if (dimension == 2) {
    for (int i = 0; i < n_points; ++i) {
      double th = 2.0 * std::numbers::pi * i / n_points;
      Vector n(2);
      n << std::cos(th), std::sin(th);
      pr.data.push_back({radius * n, n});
    }
  } else {
    // Fibonacci sphere lattice
    const double ga = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (int i = 0; i < n_points; ++i) {
      double z = n_points == 1 ? 0.0 : 1.0 - 2.0 * (i + 0.5) / n_points;
      double rxy = std::sqrt(std::max(0.0, 1.0 - z * z));
      double th = ga * i;
      Vector n(3);
      n << rxy * std::cos(th), rxy * std::sin(th), z;
      n /= n.norm();
      pr.data.push_back({radius * n, n});
    }
  }
  return pr;
}

namespace {
TangencyDatum cusp_datum(double t) {
  Vector p(2), n(2);
  p << t, std::pow(std::abs(t), 1.5) - 1.0;
  double slope = 1.5 * std::sqrt(std::abs(t)) * (t >= 0 ? 1.0 : -1.0);
  n << slope, -1.0;
  n /= n.norm();
  return {p, n};
}
}  // namespace

TangencyProblem cusp_curve(double h_min, double h_max, int count) {
  if (!(h_min > 0.0) || !(h_min < h_max) || h_max > 2.0)
    throw std::invalid_argument("cusp_curve: need 0 < h_min < h_max <= 2");
  if (count < 1) throw std::invalid_argument("cusp_curve: count >= 1");
  TangencyProblem pr;
  pr.space = NormSpace::euclidean(2);
  pr.data.push_back(cusp_datum(0.0));  // normal (0, -1)
  double ratio = count == 1 ? 1.0 : std::pow(h_max / h_min, 1.0 / (count - 1));
  for (int i = 0; i < count; ++i) {
    double t = h_min * std::pow(ratio, i);
    pr.data.push_back(cusp_datum(t));
    pr.data.push_back(cusp_datum(-t));
  }
  return pr;
}

TangencyProblem random_convex(const std::vector<double>& semi_axes,
                              int n_points, double noise, std::uint64_t seed) {
  const int n = static_cast<int>(semi_axes.size());
  if (n != 2 && n != 3)
    throw std::invalid_argument("random_convex: 2 or 3 semi-axes");
  for (double a : semi_axes)
    if (!(a > 0.0)) throw std::invalid_argument("random_convex: axes > 0");
  if (noise < 0.0) throw std::invalid_argument("random_convex: noise >= 0");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  TangencyProblem pr;
  pr.space = NormSpace::euclidean(n);
  for (int k = 0; k < n_points; ++k) {
    Vector u(n);
    double un;
    do {
      for (int i = 0; i < n; ++i) u[i] = gauss(rng);
      un = u.norm();
    } while (un < 1e-12);
    u /= un;
    Vector p(n), grad(n);
    for (int i = 0; i < n; ++i) {
      p[i] = semi_axes[i] * u[i];
      grad[i] = u[i] / semi_axes[i];  // gradient of sum x_i^2/a_i^2 at p
    }
    Vector nrm = grad / grad.norm();
    if (noise > 0.0) {
      Vector d(n);
      for (int i = 0; i < n; ++i) d[i] = gauss(rng);
      nrm += noise * d;
      nrm /= nrm.norm();
    }
    pr.data.push_back({p, nrm});
  }
  return pr;
}

}  // namespace fixtures
}  // namespace cvxjet
