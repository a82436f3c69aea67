#pragma once

#include "cvxjet/geometry.hpp"

#include <array>
#include <functional>
#include <vector>

namespace cvxjet {

/// Axis-aligned box with a lattice of sample values (row-major, last axis
/// fastest). Dimension capped at 3 for grid transforms.
struct GridFunction {
  Vector lo, hi;             // box corners
  std::vector<int> res;      // points per axis, >= 2
  std::vector<double> values;

  int dim() const { return static_cast<int>(res.size()); }
  double spacing(int axis) const {
    return (hi[axis] - lo[axis]) / (res[axis] - 1);
  }
  std::size_t size() const;
  double& at(const std::vector<int>& idx);
  double at(const std::vector<int>& idx) const;
  Vector node(const std::vector<int>& idx) const;

  static GridFunction sample(const std::function<double(const Vector&)>& f,
                             const Vector& lo, const Vector& hi,
                             const std::vector<int>& res);

  /// Multilinear interpolation (clamped to the box).
  double interpolate(const Vector& x) const;
};

/// Discrete Legendre transform f*(xi) = max_i <xi, x_i> - f(x_i) onto the
/// given dual grid, factorized axis by axis with the linear-time 1D
/// transform. The output is convex along each axis by construction.
GridFunction discrete_legendre(const GridFunction& f, const Vector& dual_lo,
                               const Vector& dual_hi,
                               const std::vector<int>& dual_res);

/// Same, with the dual box chosen from the observed slope range of f.
GridFunction discrete_legendre(const GridFunction& f);

/// 1D transform used by the factorization: conjugate of the piecewise-linear
/// interpolant through (x_i, f_i) evaluated at the slopes s_j (both grids
/// ascending). Exactly the O(N + M) lower-hull sweep.
std::vector<double> legendre_1d(const std::vector<double>& x,
                                const std::vector<double>& f,
                                const std::vector<double>& s);

/// Double discrete transform: the convex envelope of f at grid scale.
class GridBiconjugate {
 public:
  GridBiconjugate(const std::function<double(const Vector&)>& g,
                  const Vector& lo, const Vector& hi,
                  const std::vector<int>& res);

  double eval(const Vector& x) const { return envelope_.interpolate(x); }
  const GridFunction& grid() const { return envelope_; }

 private:
  GridFunction envelope_;
};

/// The jet lower envelope g(x) = min_i { 1 + <xi_i, x - y_i> + k(||x - y_i||) }
/// with a convex increasing radial kernel k, together with its closed-form
/// conjugate g*(xi) = max_i { k*(||xi - xi_i||_*) + <xi, y_i> - 1 } and the
/// biconjugate H = conv(g) = g** evaluated by concave maximization of
/// <x, xi> - g*(xi).
class JetEnvelope {
 public:
  struct Kernel {
    std::function<double(double)> k;           // k(t), k(0) = 0
    std::function<double(double)> conj;        // k*(s) = sup_t st - k(t)
    std::function<double(double)> conj_deriv;  // (k*)'(s), the argmax t
  };

  JetEnvelope(std::vector<Vector> points, std::vector<Vector> xis,
              NormSpace space, Kernel kernel);

  double eval_g(const Vector& x) const;
  int argmin_piece(const Vector& x) const;
  double eval_gstar(const Vector& xi) const;

  struct EnvelopeValue {
    double value;
    Vector maximizer;  // gradient of the envelope at x
  };

  /// H(x) with its gradient, by steepest-ascent over the concave dual
  /// objective (min-norm supergradient over near-active pieces, backtracked).
  /// Tolerance 1e-10, iteration cap 1e4; throws NumericalError past the cap.
  EnvelopeValue envelope(const Vector& x) const;

  const std::vector<Vector>& points() const { return points_; }
  const std::vector<Vector>& xis() const { return xis_; }
  const NormSpace& space() const { return space_; }

 private:
  Vector gstar_piece_grad(const Vector& xi, int i) const;
  std::vector<Vector> points_, xis_;
  NormSpace space_;
  Kernel kernel_;
};

enum class EnvelopeBackendKind { GridBiconjugate, DirectConcaveMax };

/// Compares the two backends on the given query points; returns the largest
/// discrepancy and throws NumericalError (carrying both values in the
/// message) when it exceeds `tol`.
double cross_validate(const JetEnvelope& direct, const GridBiconjugate& grid,
                      const std::vector<Vector>& queries, double tol);

}  // namespace cvxjet
