#pragma once

#include "cvxjet/feasibility.hpp"
#include "cvxjet/geometry.hpp"

#include <cstdint>
#include <vector>

namespace cvxjet {

/// Construction refused because the pairwise condition fails.
struct InfeasibleError : std::runtime_error {
  std::pair<int, int> pair;
  InfeasibleError(const std::string& what, std::pair<int, int> p)
      : std::runtime_error(what), pair(p) {}
};

/// Query outside the region where an operation is defined.
struct RegionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// The rolled-ball interpolant: V = conv{z_y} (+) B(0, r), where
/// z_y = y - r N(y). The Minkowski-sum form makes the signed distance exact:
/// b_V(x) = dist(x, conv{z_y}) - r, and every boundary query reduces to a
/// polytope projection.
class BodyC11 {
 public:
  /// Checked construction; throws InfeasibleError with the worst pair if the
  /// data does not admit rolling radius r.
  static BodyC11 build(const TangencyProblem& problem, double r);

  /// Unchecked assembly from stored parts (deserialization path).
  static BodyC11 from_parts(TangencyProblem problem, double r,
                            Polytope centers);

  double radius() const { return r_; }
  const Polytope& centers() const { return centers_; }
  const TangencyProblem& source() const { return problem_; }
  int dim() const { return problem_.space.dim; }

  /// Signed distance to the boundary: negative inside, convex, 1-Lipschitz.
  double signed_distance(const Vector& x) const;

  bool contains(const Vector& x, double tol = 1e-12) const {
    return signed_distance(x) <= tol;
  }

  /// Nearest boundary point. Defined for b_V(x) > -r (throws RegionError
  /// deeper inside, where uniqueness is lost).
  Vector project_boundary(const Vector& x) const;

  /// Outer unit normal at a boundary point s (|b_V(s)| <= 1e-9 expected).
  /// Throws RegionError at flat degenerate contacts (s inside the center
  /// polytope), which feasible data never produces on the boundary.
  Vector boundary_normal(const Vector& s) const;

  /// Minkowski gauge of the body translated so `origin` maps to 0; bisection
  /// on membership to 1e-10. `origin` must be strictly interior.
  double gauge(const Vector& x, const Vector& origin) const;

  /// Deterministic boundary samples: seeded ray casting from an interior
  /// point, bisected to |b_V| <= 1e-9.
  std::vector<Vector> sample_boundary(int count, std::uint64_t seed) const;

  /// An always-interior point (centroid of the centers, depth >= r).
  Vector interior_point() const { return centers_.centroid(); }

 private:
  BodyC11() : r_(0) {}
  TangencyProblem problem_;
  double r_;
  Polytope centers_;
};

}  // namespace cvxjet
