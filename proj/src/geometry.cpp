#include "cvxjet/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace cvxjet {

NormSpace NormSpace::euclidean(int dim) {
  if (dim < 1) throw std::invalid_argument("NormSpace: dimension must be >= 1");
  NormSpace s;
  s.kind = NormKind::Euclidean;
  s.dim = dim;
  s.p = 2.0;
  return s;
}

NormSpace NormSpace::lp(int dim, double p) {
  if (dim < 1) throw std::invalid_argument("NormSpace: dimension must be >= 1");
  if (!(p > 1.0) || !std::isfinite(p))
    throw std::invalid_argument("NormSpace: lp requires 1 < p < inf");
  NormSpace s;
  s.kind = NormKind::Lp;
  s.dim = dim;
  s.p = p;
  return s;
}

double NormSpace::dual_exponent() const {
  if (kind == NormKind::Euclidean) return 2.0;
  return p / (p - 1.0);
}

static double lp_norm(const Vector& v, double p) {
  double m = v.cwiseAbs().maxCoeff();
  if (m == 0.0) return 0.0;
  // scale out the max to avoid overflow for large exponents
  double acc = 0.0;
  for (int i = 0; i < v.size(); ++i) acc += std::pow(std::abs(v[i]) / m, p);
  return m * std::pow(acc, 1.0 / p);
}

double NormSpace::norm(const Vector& v) const {
  if (kind == NormKind::Euclidean) return v.norm();
  return lp_norm(v, p);
}

double NormSpace::dual_norm(const Vector& xi) const {
  if (kind == NormKind::Euclidean) return xi.norm();
  return lp_norm(xi, dual_exponent());
}

Vector duality_map(const Vector& u, const NormSpace& space) {
  double nu = space.norm(u);
  if (nu == 0.0) throw std::domain_error("duality_map: zero vector");
  if (space.kind == NormKind::Euclidean) return u / nu;
  Vector xi(u.size());
  for (int i = 0; i < u.size(); ++i) {
    double a = std::abs(u[i]);
    xi[i] = (a == 0.0) ? 0.0
                       : ((u[i] > 0 ? 1.0 : -1.0) *
                          std::pow(a / nu, space.p - 1.0));
  }
  return xi;
}

int Polytope::dim() const {
  return vertices.empty() ? 0 : static_cast<int>(vertices.front().size());
}

Vector Polytope::centroid() const {
  if (vertices.empty()) throw std::invalid_argument("Polytope: empty");
  Vector c = Vector::Zero(vertices.front().size());
  for (const auto& v : vertices) c += v;
  return c / static_cast<double>(vertices.size());
}

static void check_polytope(const Vector& x, const Polytope& P) {
  if (P.vertices.empty())
    throw std::invalid_argument("project_polytope: empty polytope");
  for (const auto& v : P.vertices)
    if (v.size() != x.size())
      throw std::invalid_argument("project_polytope: dimension mismatch");
}

// Solve the affine minimization min ||Q a|| s.t. sum(a) = 1 over the columns
// of Q, via Wolfe's bordered system (e e^T + Q^T Q) a = e.
static Eigen::VectorXd affine_min_weights(const Eigen::MatrixXd& Q) {
  const int k = static_cast<int>(Q.cols());
  Eigen::MatrixXd M = Eigen::MatrixXd::Ones(k, k) + Q.transpose() * Q;
  Eigen::VectorXd e = Eigen::VectorXd::Ones(k);
  Eigen::VectorXd a = M.fullPivLu().solve(e);
  double s = a.sum();
  if (std::abs(s) < 1e-300) {
    // pathological degeneracy: fall back to uniform weights
    return e / static_cast<double>(k);
  }
  return a / s;
}

Projection project_polytope(const Vector& x, const Polytope& P) {
  check_polytope(x, P);
  const int n = static_cast<int>(x.size());
  const int m = static_cast<int>(P.vertices.size());

  // shifted generators q_i = v_i - x; we seek the min-norm point of their hull
  Eigen::MatrixXd pts(n, m);
  for (int i = 0; i < m; ++i) pts.col(i) = P.vertices[i] - x;
  double scale = 1.0;
  for (int i = 0; i < m; ++i) scale = std::max(scale, pts.col(i).squaredNorm());
  const double tol = 1e-12 * scale;
  const int cap = 10 * std::max(n, 1) * m;

  // start from the generator of smallest norm
  int best = 0;
  for (int i = 1; i < m; ++i)
    if (pts.col(i).squaredNorm() < pts.col(best).squaredNorm()) best = i;

  std::vector<int> active{best};
  Eigen::VectorXd lam = Eigen::VectorXd::Ones(1);
  Vector w = pts.col(best);

  auto corral_matrix = [&]() {
    Eigen::MatrixXd Q(n, active.size());
    for (size_t i = 0; i < active.size(); ++i) Q.col(i) = pts.col(active[i]);
    return Q;
  };

  int iter = 0;
  for (; iter < cap; ++iter) {
    // optimality: min_i <w, q_i> >= <w, w> - tol
    double ww = w.squaredNorm();
    int j = 0;
    double bestdot = std::numeric_limits<double>::infinity();
    for (int i = 0; i < m; ++i) {
      double d = w.dot(pts.col(i));
      if (d < bestdot) {
        bestdot = d;
        j = i;
      }
    }
    if (bestdot >= ww - tol || ww <= tol) break;
    if (std::find(active.begin(), active.end(), j) != active.end()) break;

    active.push_back(j);
    Eigen::VectorXd lam_ext(active.size());
    lam_ext.head(lam.size()) = lam;
    lam_ext[lam.size()] = 0.0;
    lam = lam_ext;

    // minor cycle: restore a corral
    for (;;) {
      Eigen::MatrixXd Q = corral_matrix();
      Eigen::VectorXd a = affine_min_weights(Q);
      if (a.minCoeff() > 1e-14) {
        lam = a;
        break;
      }
      double theta = 1.0;
      for (int i = 0; i < a.size(); ++i)
        if (a[i] <= 1e-14 && lam[i] - a[i] > 0)
          theta = std::min(theta, lam[i] / (lam[i] - a[i]));
      lam = (1.0 - theta) * lam + theta * a;
      // drop vanished generators
      std::vector<int> keep_idx;
      for (int i = 0; i < lam.size(); ++i)
        if (lam[i] > 1e-14) keep_idx.push_back(i);
      if (keep_idx.size() == active.size()) {
        // numerical stall: drop the smallest weight
        int drop = 0;
        for (int i = 1; i < lam.size(); ++i)
          if (lam[i] < lam[drop]) drop = i;
        keep_idx.erase(std::remove(keep_idx.begin(), keep_idx.end(), drop),
                       keep_idx.end());
      }
      std::vector<int> na;
      Eigen::VectorXd nl(keep_idx.size());
      for (size_t i = 0; i < keep_idx.size(); ++i) {
        na.push_back(active[keep_idx[i]]);
        nl[i] = lam[keep_idx[i]];
      }
      active = na;
      lam = nl / nl.sum();
      if (active.size() == 1) break;
    }
    w = corral_matrix() * lam;
  }

  if (iter >= cap) {
    double ww = w.squaredNorm();
    double worst = 0.0;
    for (int i = 0; i < m; ++i)
      worst = std::max(worst, ww - w.dot(pts.col(i)));
    throw NumericalError("project_polytope: min-norm iteration cap reached",
                         worst);
  }

  Projection out;
  out.point = x + w;
  out.distance = w.norm();
  out.weights = Vector::Zero(m);
  for (size_t i = 0; i < active.size(); ++i) out.weights[active[i]] = lam[i];
  return out;
}

Vector project_simplex(const Vector& w) {
  const int m = static_cast<int>(w.size());
  std::vector<double> u(w.data(), w.data() + m);
  std::sort(u.begin(), u.end(), std::greater<double>());
  double css = 0.0, theta = 0.0;
  int rho = 0;
  for (int i = 0; i < m; ++i) {
    css += u[i];
    double t = (css - 1.0) / (i + 1);
    if (u[i] - t > 0) {
      rho = i;
      theta = t;
    }
  }
  (void)rho;
  Vector out(m);
  for (int i = 0; i < m; ++i) out[i] = std::max(0.0, w[i] - theta);
  return out;
}

Projection project_polytope_lp(const Vector& x, const Polytope& P,
                               const NormSpace& space) {
  if (space.is_euclidean()) return project_polytope(x, P);
  check_polytope(x, P);
  const int m = static_cast<int>(P.vertices.size());
  Eigen::MatrixXd V(x.size(), m);
  for (int i = 0; i < m; ++i) V.col(i) = P.vertices[i];

  auto fval = [&](const Vector& lam) { return space.norm(x - V * lam); };
  auto fgrad = [&](const Vector& lam) -> Vector {
    Vector u = x - V * lam;
    if (space.norm(u) == 0.0) return Vector::Zero(m);
    Vector g = duality_map(u, space);  // gradient of ||.||_p at u
    return -V.transpose() * g;
  };

  // warm start at the Euclidean projection weights
  Vector lam = project_polytope(x, P).weights;
  double f = fval(lam);
  double step = 1.0;
  const int cap = 50000;
  int stall = 0;
  for (int it = 0; it < cap; ++it) {
    Vector g = fgrad(lam);
    Vector trial;
    double ft = f;
    bool moved = false;
    double t = step;
    for (int bs = 0; bs < 60; ++bs) {
      trial = project_simplex(lam - t * g);
      ft = fval(trial);
      if (ft < f - 1e-16) {
        moved = true;
        break;
      }
      t *= 0.5;
    }
    if (!moved) break;
    step = std::min(4.0 * t, 1e6);
    double delta = f - ft;
    lam = trial;
    f = ft;
    if (delta < 1e-13 * (1.0 + f)) {
      if (++stall > 20) break;
    } else {
      stall = 0;
    }
  }

  Projection out;
  out.weights = lam;
  out.point = V * lam;
  out.distance = f;
  return out;
}

double polytope_distance(const Vector& x, const Polytope& P,
                         const NormSpace& space) {
  if (space.is_euclidean()) return project_polytope(x, P).distance;
  return project_polytope_lp(x, P, space).distance;
}

}  // namespace cvxjet
