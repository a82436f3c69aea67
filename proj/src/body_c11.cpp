#include "cvxjet/body_c11.hpp"

#include <cmath>
#include <random>

namespace cvxjet {

BodyC11 BodyC11::build(const TangencyProblem& problem, double r) {
  if (!(r > 0.0)) throw std::invalid_argument("BodyC11: r must be > 0");
  FeasibilityReport rep = check_c11(problem, r);
  if (!rep.feasible) {
    auto p = rep.violating_pair.value_or(std::make_pair(-1, -1));
    throw InfeasibleError("BodyC11: data infeasible at the requested radius (" +
                              (rep.diagnostic.empty()
                                   ? "pair " + std::to_string(p.first) + "," +
                                         std::to_string(p.second)
                                   : rep.diagnostic) +
                              ")",
                          p);
  }
  BodyC11 body;
  body.problem_ = problem;
  body.r_ = r;
  body.centers_.vertices.reserve(problem.data.size());
  for (const auto& d : problem.data)
    body.centers_.vertices.push_back(d.point - r * d.normal);
  return body;
}

BodyC11 BodyC11::from_parts(TangencyProblem problem, double r,
                            Polytope centers) {
  BodyC11 body;
  body.problem_ = std::move(problem);
  body.r_ = r;
  body.centers_ = std::move(centers);
  return body;
}

double BodyC11::signed_distance(const Vector& x) const {
  return project_polytope(x, centers_).distance - r_;
}

Vector BodyC11::project_boundary(const Vector& x) const {
  Projection pr = project_polytope(x, centers_);
  double b = pr.distance - r_;
  if (b <= -r_ + 1e-9)
    throw RegionError("project_boundary: point too deep inside the body");
  return pr.point + r_ * (x - pr.point) / pr.distance;
}

Vector BodyC11::boundary_normal(const Vector& s) const {
  Projection pr = project_polytope(s, centers_);
  if (pr.distance <= 1e-9)
    throw RegionError("boundary_normal: flat degenerate contact");
  return (s - pr.point) / pr.distance;
}

double BodyC11::gauge(const Vector& x, const Vector& origin) const {
  if (signed_distance(origin) >= -1e-6)
    throw std::invalid_argument("gauge: origin must be strictly interior");
  Vector d = x - origin;
  if (d.norm() == 0.0) return 0.0;
  // mu = inf{t > 0 : origin + d/t in V}; membership is monotone in t
  double hi = 1.0;
  while (signed_distance(origin + d / hi) > 0.0 && hi < 1e12) hi *= 2.0;
  double lo = hi;
  while (lo > 1e-12 && signed_distance(origin + d / lo) <= 0.0) lo *= 0.5;
  if (signed_distance(origin + d / lo) <= 0.0) return 0.0;  // within 1e-12
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    if (signed_distance(origin + d / mid) <= 0.0)
      hi = mid;
    else
      lo = mid;
    if (hi - lo <= 1e-10 * hi) break;
  }
  return 0.5 * (lo + hi);
}

std::vector<Vector> BodyC11::sample_boundary(int count,
                                             std::uint64_t seed) const {
  if (count < 1) throw std::invalid_argument("sample_boundary: count >= 1");
  const int n = dim();
  Vector c = interior_point();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<Vector> out;
  out.reserve(count);
  while (static_cast<int>(out.size()) < count) {
    Vector d(n);
    for (int i = 0; i < n; ++i) d[i] = gauss(rng);
    double dn = d.norm();
    if (dn < 1e-12) continue;
    d /= dn;
    double hi = r_;
    while (signed_distance(c + hi * d) < 0.0) hi *= 2.0;
    double lo = 0.0;
    for (int it = 0; it < 120; ++it) {
      double mid = 0.5 * (lo + hi);
      if (signed_distance(c + mid * d) < 0.0)
        lo = mid;
      else
        hi = mid;
      if (hi - lo <= 1e-13 * (1.0 + hi)) break;
    }
    out.push_back(c + 0.5 * (lo + hi) * d);
  }
  return out;
}

}  // namespace cvxjet
