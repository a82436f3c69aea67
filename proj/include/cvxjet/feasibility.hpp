#pragma once

#include "cvxjet/geometry.hpp"
#include "cvxjet/modulus.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace cvxjet {

/// One tangency datum: a point together with its unit outer normal
/// (Euclidean) or unit dual functional coefficients (l_p spaces).
struct TangencyDatum {
  Vector point;
  Vector normal;
};

/// Finite 1-jet data: the set C with its normal field.
struct TangencyProblem {
  NormSpace space;
  std::vector<TangencyDatum> data;

  /// Throws std::invalid_argument on empty data, dimension mismatches, or
  /// normals that are not unit (dual norm, tolerance 1e-12).
  void validate() const;
};

struct FeasibilityReport {
  bool feasible = false;
  /// r_max or delta_max; +inf when no pair constrains, 0 when some pair is
  /// unconditionally violated.
  double extremal_constant = 0.0;
  std::optional<std::pair<int, int>> violating_pair;
  std::vector<double> margins;  // one per ordered pair (i, j), i != j
  std::string diagnostic;
};

/// Rolling-radius condition: <N(y), y-x> >= r/2 ||N(y)-N(x)||^2 over all
/// ordered pairs. Euclidean spaces only.
FeasibilityReport check_c11(const TangencyProblem& problem, double r);

/// Sharp pairwise constant: inf over ordered pairs of
/// 2 <N(y), y-x> / ||N(y)-N(x)||^2. +inf when no pair constrains, 0 when some
/// pair has a negative left side.
double max_c11_radius(const TangencyProblem& problem);

/// Modulus condition: <N(y), y-x> >= ||dN|| omega^{-1}(delta ||dN||).
FeasibilityReport check_c1omega(const TangencyProblem& problem,
                                const ModulusCalculus& modulus, double delta);

/// Sharp delta for the modulus condition.
double max_c1omega_delta(const TangencyProblem& problem,
                         const ModulusCalculus& modulus);

/// Dual-functional condition: D(y)(y-x) >= delta ||D(x)-D(y)||_*^{1+1/alpha}.
FeasibilityReport check_c1alpha_dual(const TangencyProblem& problem,
                                     double alpha, double delta);

/// Sharp delta for the dual-functional condition.
double max_c1alpha_delta(const TangencyProblem& problem, double alpha);

}  // namespace cvxjet
