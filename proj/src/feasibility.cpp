#include "cvxjet/feasibility.hpp"

#include <cmath>
#include <limits>

namespace cvxjet {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kSlackRel = 1e-12;

// Duplicate points carrying distinct normals admit no interpolating jet.
std::optional<std::pair<int, int>> find_duplicate_conflict(
    const TangencyProblem& pr) {
  const int m = static_cast<int>(pr.data.size());
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      if ((pr.data[i].point - pr.data[j].point).norm() <= 1e-14 &&
          (pr.data[i].normal - pr.data[j].normal).norm() > 1e-12)
        return std::make_pair(i, j);
  return std::nullopt;
}

// Shared ordered-pair scan. rhs(dn, lhs) gives the required right side from
// the normal gap dn = ||N(x)-N(y)|| (dual norm in the dual case).
template <typename Rhs>
FeasibilityReport scan_pairs(const TangencyProblem& pr, double constant,
                             bool dual_norms, Rhs rhs) {
  pr.validate();
  FeasibilityReport rep;
  rep.extremal_constant = constant;
  if (auto dup = find_duplicate_conflict(pr)) {
    rep.feasible = false;
    rep.violating_pair = dup;
    rep.diagnostic = "duplicate point with distinct normals";
    return rep;
  }
  const int m = static_cast<int>(pr.data.size());
  rep.feasible = true;
  double worst = kInf;
  std::pair<int, int> worst_pair{0, 0};
  for (int j = 0; j < m; ++j) {
    for (int i = 0; i < m; ++i) {
      if (i == j) continue;
      Vector d = pr.data[j].point - pr.data[i].point;
      double lhs = pr.data[j].normal.dot(d);
      Vector dn = pr.data[i].normal - pr.data[j].normal;
      double gap = dual_norms ? pr.space.dual_norm(dn) : dn.norm();
      double margin = lhs - rhs(gap);
      rep.margins.push_back(margin);
      double slack = kSlackRel * (1.0 + d.norm());
      double scaled = margin + slack;  // >= 0 means the pair passes
      if (scaled < worst) {
        worst = scaled;
        worst_pair = {i, j};
      }
      if (margin < -slack) rep.feasible = false;
    }
  }
  if (!rep.feasible) rep.violating_pair = worst_pair;
  return rep;
}
}  // namespace

void TangencyProblem::validate() const {
  if (data.empty())
    throw std::invalid_argument("TangencyProblem: at least one datum required");
  for (const auto& d : data) {
    if (d.point.size() != space.dim || d.normal.size() != space.dim)
      throw std::invalid_argument("TangencyProblem: dimension mismatch");
    if (!d.point.allFinite() || !d.normal.allFinite())
      throw std::invalid_argument("TangencyProblem: non-finite entry");
    double n = space.dual_norm(d.normal);
    if (std::abs(n - 1.0) > 1e-12)
      throw std::invalid_argument(
          "TangencyProblem: normals must be unit in the dual norm");
  }
}

FeasibilityReport check_c11(const TangencyProblem& problem, double r) {
  if (!problem.space.is_euclidean())
    throw std::invalid_argument("check_c11: Euclidean space required");
  if (!(r > 0.0)) throw std::invalid_argument("check_c11: r must be > 0");
  return scan_pairs(problem, r, false,
                    [r](double gap) { return 0.5 * r * gap * gap; });
}

double max_c11_radius(const TangencyProblem& problem) {
  if (!problem.space.is_euclidean())
    throw std::invalid_argument("max_c11_radius: Euclidean space required");
  problem.validate();
  if (find_duplicate_conflict(problem)) return 0.0;
  const int m = static_cast<int>(problem.data.size());
  double rmax = kInf;
  for (int j = 0; j < m; ++j) {
    for (int i = 0; i < m; ++i) {
      if (i == j) continue;
      Vector d = problem.data[j].point - problem.data[i].point;
      double lhs = problem.data[j].normal.dot(d);
      double gap = (problem.data[i].normal - problem.data[j].normal).norm();
      if (lhs < 0.0) return 0.0;
      if (gap > 0.0) rmax = std::min(rmax, 2.0 * lhs / (gap * gap));
    }
  }
  return rmax;
}

FeasibilityReport check_c1omega(const TangencyProblem& problem,
                                const ModulusCalculus& modulus, double delta) {
  if (!problem.space.is_euclidean())
    throw std::invalid_argument("check_c1omega: Euclidean space required");
  if (!(delta > 0.0))
    throw std::invalid_argument("check_c1omega: delta must be > 0");
  return scan_pairs(problem, delta, false, [&](double gap) {
    return gap * modulus.omega_inverse(delta * gap);
  });
}

double max_c1omega_delta(const TangencyProblem& problem,
                         const ModulusCalculus& modulus) {
  if (!problem.space.is_euclidean())
    throw std::invalid_argument("max_c1omega_delta: Euclidean space required");
  problem.validate();
  if (find_duplicate_conflict(problem)) return 0.0;
  const int m = static_cast<int>(problem.data.size());
  double dmax = kInf;
  for (int j = 0; j < m; ++j) {
    for (int i = 0; i < m; ++i) {
      if (i == j) continue;
      Vector d = problem.data[j].point - problem.data[i].point;
      double lhs = problem.data[j].normal.dot(d);
      double gap = (problem.data[i].normal - problem.data[j].normal).norm();
      if (lhs < 0.0) return 0.0;
      // pair-sharp delta solves omega^{-1}(delta gap) = lhs / gap
      if (gap > 0.0) dmax = std::min(dmax, modulus.omega(lhs / gap) / gap);
    }
  }
  return dmax;
}

FeasibilityReport check_c1alpha_dual(const TangencyProblem& problem,
                                     double alpha, double delta) {
  if (!(alpha > 0.0) || alpha > 1.0)
    throw std::invalid_argument("check_c1alpha_dual: alpha must be in (0, 1]");
  if (!(delta > 0.0))
    throw std::invalid_argument("check_c1alpha_dual: delta must be > 0");
  double e = 1.0 + 1.0 / alpha;
  return scan_pairs(problem, delta, true,
                    [&](double gap) { return delta * std::pow(gap, e); });
}

double max_c1alpha_delta(const TangencyProblem& problem, double alpha) {
  if (!(alpha > 0.0) || alpha > 1.0)
    throw std::invalid_argument("max_c1alpha_delta: alpha must be in (0, 1]");
  problem.validate();
  if (find_duplicate_conflict(problem)) return 0.0;
  const int m = static_cast<int>(problem.data.size());
  const double e = 1.0 + 1.0 / alpha;
  double dmax = kInf;
  for (int j = 0; j < m; ++j) {
    for (int i = 0; i < m; ++i) {
      if (i == j) continue;
      Vector d = problem.data[j].point - problem.data[i].point;
      double lhs = problem.data[j].normal.dot(d);
      double gap =
          problem.space.dual_norm(problem.data[i].normal - problem.data[j].normal);
      if (lhs < 0.0) return 0.0;
      if (gap > 0.0) dmax = std::min(dmax, lhs / std::pow(gap, e));
    }
  }
  return dmax;
}

}  // namespace cvxjet
