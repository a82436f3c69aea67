#include "cvxjet/body_c1omega.hpp"

#include <cmath>
#include <random>

namespace cvxjet {

namespace {
Vector primal_unit(const Vector& dual, const NormSpace& space) {
  if (space.is_euclidean()) return dual / dual.norm();
  // involution: the norming vector of a unit dual functional
  NormSpace dual_space = NormSpace::lp(space.dim, space.dual_exponent());
  return duality_map(dual, dual_space);
}
}  // namespace

BodyC1Omega BodyC1Omega::build_hilbert(const TangencyProblem& problem,
                                       const ModulusCalculus& modulus,
                                       double delta) {
  if (!problem.space.is_euclidean())
    throw std::invalid_argument("BodyC1Omega: HilbertOmega needs Euclidean");
  FeasibilityReport rep = check_c1omega(problem, modulus, delta);
  if (!rep.feasible) {
    auto p = rep.violating_pair.value_or(std::make_pair(-1, -1));
    throw InfeasibleError("BodyC1Omega: data infeasible at delta", p);
  }
  return from_parts(problem, C1OmegaVariant::HilbertOmega,
                    modulus.modulus(), delta, 1.0);
}

BodyC1Omega BodyC1Omega::build_dual_alpha(const TangencyProblem& problem,
                                          double alpha, double delta) {
  FeasibilityReport rep = check_c1alpha_dual(problem, alpha, delta);
  if (!rep.feasible) {
    auto p = rep.violating_pair.value_or(std::make_pair(-1, -1));
    throw InfeasibleError("BodyC1Omega: data infeasible at delta", p);
  }
  return from_parts(problem, C1OmegaVariant::DualAlpha, std::nullopt, delta,
                    alpha);
}

BodyC1Omega BodyC1Omega::from_parts(TangencyProblem problem,
                                    C1OmegaVariant variant,
                                    std::optional<Modulus> modulus,
                                    double delta, double alpha) {
  if (!(delta > 0.0))
    throw std::invalid_argument("BodyC1Omega: delta must be > 0");
  BodyC1Omega body;
  body.problem_ = std::move(problem);
  body.variant_ = variant;
  body.delta_ = delta;
  body.alpha_ = alpha;
  if (variant == C1OmegaVariant::HilbertOmega) {
    if (!modulus)
      throw std::invalid_argument("BodyC1Omega: HilbertOmega needs a modulus");
    body.modulus_ = std::make_shared<ModulusCalculus>(*modulus);
  } else {
    if (!(alpha > 0.0) || alpha > 1.0)
      throw std::invalid_argument("BodyC1Omega: alpha must be in (0, 1]");
    body.M_ = std::pow(alpha / ((1.0 + alpha) * delta), alpha);
  }
  body.assemble();
  return body;
}

double BodyC1Omega::inner_depth() const {
  if (variant_ == C1OmegaVariant::HilbertOmega)
    return modulus_->omega_inverse(delta_);
  return std::pow(M_, -1.0 / alpha_);
}

void BodyC1Omega::assemble() {
  const int n = problem_.space.dim;
  const double rho = inner_depth();

  std::vector<Vector> pts, xis;
  A_.vertices.clear();
  for (const auto& d : problem_.data) {
    pts.push_back(d.point);
    xis.push_back(d.normal);
    A_.vertices.push_back(d.point);
    A_.vertices.push_back(d.point - rho * primal_unit(d.normal, problem_.space));
  }

  JetEnvelope::Kernel ker;
  double reach;  // how far past A the level set {F <= 1} can extend
  if (variant_ == C1OmegaVariant::HilbertOmega) {
    auto mc = modulus_;
    double delta = delta_;
    ker.k = [mc, delta](double t) { return mc->phi(t) / delta; };
    ker.conj = [mc, delta](double s) {
      return mc->phi_conjugate(delta * s) / delta;
    };
    ker.conj_deriv = [mc, delta](double s) {
      return mc->omega_inverse(delta * s);
    };
    dist_coeff_ = modulus_->phi_conjugate(delta_) / delta_;
    reach = modulus_->phi_inverse(1.0) + rho;
  } else {
    double M = M_, a = alpha_, delta = delta_;
    ker.k = [M, a](double t) {
      return M / (1.0 + a) * std::pow(t, 1.0 + a);
    };
    ker.conj = [delta, a](double s) { return delta * std::pow(s, 1.0 + 1.0 / a); };
    ker.conj_deriv = [M, a](double s) { return std::pow(s / M, 1.0 / a); };
    reach = std::pow(delta_, 1.0 / (1.0 + alpha_)) + rho;
  }
  env_ = std::make_shared<JetEnvelope>(pts, xis, problem_.space, ker);

  box_lo_ = Vector::Constant(n, std::numeric_limits<double>::infinity());
  box_hi_ = -box_lo_;
  for (const auto& v : A_.vertices) {
    box_lo_ = box_lo_.cwiseMin(v);
    box_hi_ = box_hi_.cwiseMax(v);
  }
  double pad = 1.1 * reach;
  box_lo_ -= Vector::Constant(n, pad);
  box_hi_ += Vector::Constant(n, pad);
}

Vector BodyC1Omega::minimizer_point(int i) const {
  const auto& d = problem_.data.at(i);
  return d.point - inner_depth() * primal_unit(d.normal, problem_.space);
}

double BodyC1Omega::min_value() const {
  if (variant_ == C1OmegaVariant::HilbertOmega)
    return 1.0 - modulus_->phi_conjugate(delta_) / delta_;
  return 1.0 - delta_;
}

double BodyC1Omega::distance_to_A(const Vector& x) const {
  return polytope_distance(x, A_, problem_.space);
}

void BodyC1Omega::check_box(const Vector& x) const {
  for (int i = 0; i < x.size(); ++i)
    if (x[i] < box_lo_[i] || x[i] > box_hi_[i])
      throw RegionError("BodyC1Omega: query outside the validated region");
}

double BodyC1Omega::eval_F(const Vector& x) const {
  check_box(x);
  double h = env_->envelope(x).value;
  double d = distance_to_A(x);
  if (variant_ == C1OmegaVariant::HilbertOmega)
    return h + dist_coeff_ * modulus_->phi(d);
  return h + std::pow(d, 1.0 + alpha_);
}

Vector BodyC1Omega::grad_F(const Vector& x) const {
  check_box(x);
  Vector grad = env_->envelope(x).maximizer;
  Projection pr = problem_.space.is_euclidean()
                      ? project_polytope(x, A_)
                      : project_polytope_lp(x, A_, problem_.space);
  double d = pr.distance;
  if (d > 1e-12) {
    if (variant_ == C1OmegaVariant::HilbertOmega) {
      grad += dist_coeff_ * modulus_->omega(d) * (x - pr.point) / d;
    } else {
      grad += (1.0 + alpha_) * std::pow(d, alpha_) *
              duality_map(x - pr.point, problem_.space);
    }
  }
  return grad;
}

std::vector<Vector> BodyC1Omega::sample_boundary(int count,
                                                 std::uint64_t seed) const {
  if (count < 1) throw std::invalid_argument("sample_boundary: count >= 1");
  const int n = dim();
  Vector c = minimizer_point(0);
  if (problem_.data.size() > 1) {
    // centroid of the minimizer points: still has F < 1 by convexity
    c = Vector::Zero(n);
    for (size_t i = 0; i < problem_.data.size(); ++i)
      c += minimizer_point(static_cast<int>(i));
    c /= static_cast<double>(problem_.data.size());
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<Vector> out;
  out.reserve(count);
  while (static_cast<int>(out.size()) < count) {
    Vector dir(n);
    for (int i = 0; i < n; ++i) dir[i] = gauss(rng);
    double dn = dir.norm();
    if (dn < 1e-12) continue;
    dir /= dn;
    // largest step staying inside the box
    double tmax = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
      if (dir[i] > 0) tmax = std::min(tmax, (box_hi_[i] - c[i]) / dir[i]);
      if (dir[i] < 0) tmax = std::min(tmax, (box_lo_[i] - c[i]) / dir[i]);
    }
    tmax *= 1.0 - 1e-12;  // keep c + tmax*dir inside the box under roundoff
    if (eval_F(c + tmax * dir) < 1.0)
      throw RegionError("sample_boundary: ray stays below level 1 in the box");
    double lo = 0.0, hi = tmax;
    for (int it = 0; it < 200; ++it) {
      double mid = 0.5 * (lo + hi);
      double v = eval_F(c + mid * dir);
      if (v < 1.0)
        lo = mid;
      else
        hi = mid;
      if (std::abs(v - 1.0) <= 1e-9 || hi - lo < 1e-14 * (1.0 + hi)) break;
    }
    out.push_back(c + 0.5 * (lo + hi) * dir);
  }
  return out;
}

LevelSetBoundsReport BodyC1Omega::level_set_bounds_check(
    int samples, std::uint64_t seed) const {
  LevelSetBoundsReport rep;
  double rho = inner_depth();
  double reach = variant_ == C1OmegaVariant::HilbertOmega
                     ? modulus_->phi_inverse(1.0)
                     : std::pow(delta_, 1.0 / (1.0 + alpha_));
  rep.lower_bound = (1.0 - min_value()) / (reach + rho);
  double upper_scale = variant_ == C1OmegaVariant::HilbertOmega
                           ? modulus_->omega(reach + rho)
                           : std::pow(reach + rho, alpha_);
  rep.grad_min = std::numeric_limits<double>::infinity();
  rep.grad_max = 0.0;
  rep.lower_ok = true;
  for (const auto& s : sample_boundary(samples, seed)) {
    double gn = problem_.space.dual_norm(grad_F(s));
    rep.grad_min = std::min(rep.grad_min, gn);
    rep.grad_max = std::max(rep.grad_max, gn);
    if (gn < rep.lower_bound - 1e-9) {
      rep.lower_ok = false;
      rep.witnesses.push_back(s);
    }
  }
  rep.fitted_upper = rep.grad_max / upper_scale;
  return rep;
}

GridBiconjugate BodyC1Omega::make_grid_backend(int res_per_axis) const {
  const int n = dim();
  if (n > 3)
    throw std::invalid_argument("make_grid_backend: grid capped at 3 axes");
  std::vector<int> res(n, res_per_axis);
  auto g = [this](const Vector& x) { return env_->eval_g(x); };
  return GridBiconjugate(g, box_lo_, box_hi_, res);
}

}  // namespace cvxjet
