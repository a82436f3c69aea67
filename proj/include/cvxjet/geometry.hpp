#pragma once

#include <Eigen/Dense>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cvxjet {

using Vector = Eigen::VectorXd;

/// Thrown when an iterative kernel fails to reach its residual target.
struct NumericalError : std::runtime_error {
  double residual;
  NumericalError(const std::string& what, double res)
      : std::runtime_error(what), residual(res) {}
};

enum class NormKind { Euclidean, Lp };

/// Finite-dimensional normed space: Euclidean or an l_p norm with 1 < p < inf.
struct NormSpace {
  NormKind kind = NormKind::Euclidean;
  int dim = 0;
  double p = 2.0;  // exponent, Lp only

  static NormSpace euclidean(int dim);
  static NormSpace lp(int dim, double p);

  /// q with 1/p + 1/q = 1 (q = 2 for Euclidean).
  double dual_exponent() const;

  double norm(const Vector& v) const;
  double dual_norm(const Vector& xi) const;

  bool is_euclidean() const { return kind == NormKind::Euclidean; }
};

/// Norming functional of u: the unique xi with ||xi||_* = 1 and xi(u) = ||u||.
/// Euclidean: u/||u||.  l_p: xi_i = sign(u_i)|u_i|^{p-1} / ||u||_p^{p-1}.
Vector duality_map(const Vector& u, const NormSpace& space);

/// Convex hull of a finite generator list. Generators need not be extreme and
/// may repeat; lower-dimensional hulls are fine.
struct Polytope {
  std::vector<Vector> vertices;

  int dim() const;
  Vector centroid() const;
};

struct Projection {
  Vector point;     // nearest point of the hull
  double distance;  // ||x - point|| in the respective norm
  Vector weights;   // convex coefficients over the generators
};

/// Euclidean nearest point in conv(vertices), by Wolfe's min-norm-point
/// active-set iteration. Residual target 1e-12, iteration cap
/// 10 * dim * |vertices|.
Projection project_polytope(const Vector& x, const Polytope& P);

/// Nearest point in conv(vertices) under an arbitrary NormSpace, by projected
/// descent over the weight simplex (distance accurate to ~1e-9; used where
/// only the distance value matters).
Projection project_polytope_lp(const Vector& x, const Polytope& P,
                               const NormSpace& space);

/// Distance from x to conv(vertices) in the given norm.
double polytope_distance(const Vector& x, const Polytope& P,
                         const NormSpace& space);

/// Euclidean projection of w onto the probability simplex.
Vector project_simplex(const Vector& w);

}  // namespace cvxjet
