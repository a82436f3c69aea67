#pragma once

#include "cvxjet/body_c11.hpp"
#include "cvxjet/envelope.hpp"
#include "cvxjet/feasibility.hpp"
#include "cvxjet/modulus.hpp"

#include <cstdint>
#include <memory>
#include <optional>

namespace cvxjet {

enum class C1OmegaVariant { HilbertOmega, DualAlpha };

struct LevelSetBoundsReport {
  double grad_min = 0.0, grad_max = 0.0;
  double lower_bound = 0.0;   // required infimum of ||grad F|| on {F = 1}
  double fitted_upper = 0.0;  // empirically fitted multiple of the upper scale
  bool lower_ok = false;
  std::vector<Vector> witnesses;  // level-set points violating the lower bound
};

/// The sublevel-set interpolant {F <= 1} with
///   HilbertOmega: F = H + delta^{-1} phi*(delta) phi(d_A),
///   DualAlpha:    F = H + d_A^{1+alpha},
/// where H = conv(g) is the convex envelope of the jet lower envelope g and
/// A = conv(C with the rolled-in points y - rho N(y)) for the variant's depth
/// rho. H is evaluated through the closed-form conjugate backend; a grid
/// biconjugate backend is available for cross-validation.
class BodyC1Omega {
 public:
  static BodyC1Omega build_hilbert(const TangencyProblem& problem,
                                   const ModulusCalculus& modulus,
                                   double delta);
  static BodyC1Omega build_dual_alpha(const TangencyProblem& problem,
                                      double alpha, double delta);
  /// Unchecked assembly (deserialization path).
  static BodyC1Omega from_parts(TangencyProblem problem, C1OmegaVariant variant,
                                std::optional<Modulus> modulus, double delta,
                                double alpha);

  C1OmegaVariant variant() const { return variant_; }
  double delta() const { return delta_; }
  double alpha() const { return alpha_; }
  double big_m() const { return M_; }
  const TangencyProblem& source() const { return problem_; }
  const ModulusCalculus& modulus() const { return *modulus_; }
  const Polytope& inner_hull() const { return A_; }
  const JetEnvelope& jet() const { return *env_; }
  int dim() const { return problem_.space.dim; }

  /// The rolled-in global minimizer of datum i's piece, y_i - rho N(y_i).
  Vector minimizer_point(int i) const;
  /// inf F (= F at every minimizer point).
  double min_value() const;
  /// Depth rho of the rolled-in points.
  double inner_depth() const;

  /// Validated query region (box enclosing the whole level set {F <= 1}).
  const Vector& box_lo() const { return box_lo_; }
  const Vector& box_hi() const { return box_hi_; }

  double eval_g(const Vector& x) const { return env_->eval_g(x); }
  double distance_to_A(const Vector& x) const;
  double eval_F(const Vector& x) const;
  Vector grad_F(const Vector& x) const;
  bool contains(const Vector& x, double tol = 1e-10) const {
    return eval_F(x) <= 1.0 + tol;
  }

  /// Deterministic samples of the level set {F = 1} (ray-cast bisection from a
  /// minimizer point, |F - 1| <= 1e-8 per sample).
  std::vector<Vector> sample_boundary(int count, std::uint64_t seed) const;

  /// Gradient pinching on sampled level-set points.
  LevelSetBoundsReport level_set_bounds_check(int samples,
                                              std::uint64_t seed) const;

  /// Grid backend over the validated box for cross-validation.
  GridBiconjugate make_grid_backend(int res_per_axis) const;

 private:
  BodyC1Omega() = default;
  void assemble();
  void check_box(const Vector& x) const;

  TangencyProblem problem_;
  C1OmegaVariant variant_ = C1OmegaVariant::HilbertOmega;
  std::shared_ptr<ModulusCalculus> modulus_;  // HilbertOmega only
  double delta_ = 0.0;
  double alpha_ = 1.0;  // DualAlpha only
  double M_ = 0.0;      // DualAlpha constant tied to delta
  Polytope A_;
  std::shared_ptr<JetEnvelope> env_;
  Vector box_lo_, box_hi_;
  double dist_coeff_ = 0.0;  // delta^{-1} phi*(delta) (HilbertOmega)
};

}  // namespace cvxjet
