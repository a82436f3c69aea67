#pragma once

#include "cvxjet/feasibility.hpp"

#include <cstdint>

namespace cvxjet {
namespace fixtures {

/// Points on the sphere of the given radius with outward normals N(x) = x/|x|.
/// 2D: equispaced angles; 3D: Fibonacci lattice. Deterministic.
TangencyProblem sphere(int n_points, int dimension, double radius = 1.0);

/// Samples of the curve y = |t|^{3/2} - 1 with outward (downward) unit
/// normals: the canonical data set that is C^{1,1/2}-feasible but fails every
/// fixed rolling radius under refinement. Emits t = 0 plus +-count samples
/// with |t| geometrically spaced in [h_min, h_max].
TangencyProblem cusp_curve(double h_min, double h_max, int count);

/// Ellipse (2D, axes a >= b) or ellipsoid (3D) samples with exact outward
/// normals, optionally perturbed by rotating each normal by a Gaussian angle
/// of standard deviation `noise`.
TangencyProblem random_convex(const std::vector<double>& semi_axes,
                              int n_points, double noise, std::uint64_t seed);

}  // namespace fixtures
}  // namespace cvxjet
