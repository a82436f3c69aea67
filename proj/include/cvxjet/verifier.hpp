#pragma once

#include "cvxjet/body_c11.hpp"
#include "cvxjet/body_c1omega.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace cvxjet {

struct PropertyRecord {
  std::string name;
  std::string detail;         // what is being measured / asserted
  int samples = 0;            // sample or pair count actually used
  double worst_margin = 0.0;  // signed slack, >= -tolerance means pass
  double measured = 0.0;      // measured constant, when meaningful
  double tolerance = 0.0;
  bool pass = true;
  std::vector<Vector> witnesses;
  std::string note;
};

struct VerificationReport {
  std::string subject;  // body kind
  std::uint64_t seed = 0;
  int samples = 0;
  std::vector<PropertyRecord> records;

  bool all_pass() const;
  const PropertyRecord* find(const std::string& name) const;
};

/// Rolling-ball / normal-inequality / gauge suite for a rolled-ball body.
/// Uses `samples` boundary points; pair statistics sweep a deterministic
/// triangular order so measured sup-constants are monotone in `samples`.
VerificationReport verify_c11(const BodyC11& body, int samples,
                              std::uint64_t seed);

/// Signed-distance suite: unique projection identity, projection
/// monotonicity on U_eps, gradient = normal-of-projection, gradient
/// Lipschitz bound on U_eps, convexity.
VerificationReport verify_signed_distance(const BodyC11& body, double epsilon,
                                          int samples, std::uint64_t seed);

/// Level-set suite for a sublevel-set body: interpolation, modulus-continuity
/// of the Gauss map (fitted constant), the pairwise dual inequality with its
/// own fitted constant, supporting-region inclusion, gradient pinching.
VerificationReport verify_c1omega(const BodyC1Omega& body, int samples,
                                  std::uint64_t seed);

}  // namespace cvxjet
