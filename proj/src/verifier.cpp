#include "cvxjet/verifier.hpp"

#include <cmath>
#include <random>

namespace cvxjet {

namespace {
constexpr double kTolExact = 1e-9;
constexpr double kTolFiniteDiff = 1e-5;
constexpr double kTolLipschitz = 1e-3;
constexpr int kPairCap = 20000;

// triangular pair order (0,1),(0,2),(1,2),(0,3),... so that a larger budget
// visits a superset of the pairs of a smaller one
template <typename Fn>
int for_pairs(int n, int budget, Fn fn) {
  int used = 0;
  for (int j = 1; j < n && used < budget; ++j)
    for (int i = 0; i < j && used < budget; ++i, ++used) fn(i, j);
  return used;
}

Vector gauss_dir(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vector d(n);
  double dn = 0.0;
  do {
    for (int i = 0; i < n; ++i) d[i] = gauss(rng);
    dn = d.norm();
  } while (dn < 1e-12);
  return d / dn;
}
}  // namespace

bool VerificationReport::all_pass() const {
  for (const auto& r : records)
    if (!r.pass) return false;
  return true;
}

const PropertyRecord* VerificationReport::find(const std::string& name) const {
  for (const auto& r : records)
    if (r.name == name) return &r;
  return nullptr;
}

VerificationReport verify_c11(const BodyC11& body, int samples,
                              std::uint64_t seed) {
  VerificationReport rep;
  rep.subject = "c11";
  rep.seed = seed;
  rep.samples = samples;
  const double r = body.radius();
  const int n = body.dim();
  std::mt19937_64 rng(seed);

  // interpolation at the data
  {
    PropertyRecord pr;
    pr.name = "interpolation";
    pr.detail = "b_V = 0 and boundary normal matches the datum normal";
    pr.tolerance = 1e-7;
    double worst = 0.0;
    for (const auto& d : body.source().data) {
      double bv = std::abs(body.signed_distance(d.point));
      double nd = (body.boundary_normal(d.point) - d.normal).norm();
      if (bv > kTolExact || nd > 1e-7) {
        pr.pass = false;
        pr.witnesses.push_back(d.point);
      }
      worst = std::max(worst, std::max(bv, nd));
    }
    pr.samples = static_cast<int>(body.source().data.size());
    pr.measured = worst;
    pr.worst_margin = 1e-7 - worst;
    rep.records.push_back(pr);
  }

  std::vector<Vector> bnd = body.sample_boundary(samples, seed);
  std::vector<Vector> nrm;
  nrm.reserve(bnd.size());
  for (const auto& s : bnd) nrm.push_back(body.boundary_normal(s));

  // Gauss map Lipschitz constant <= 1/r
  {
    PropertyRecord pr;
    pr.name = "gauss-lipschitz";
    pr.detail = "max |N(s)-N(t)| / |s-t| over boundary pairs";
    pr.tolerance = kTolLipschitz;
    double lip = 0.0;
    pr.samples = for_pairs(static_cast<int>(bnd.size()), kPairCap,
                           [&](int i, int j) {
                             double ds = (bnd[i] - bnd[j]).norm();
                             if (ds < 1e-9) return;
                             lip = std::max(lip,
                                            (nrm[i] - nrm[j]).norm() / ds);
                           });
    pr.measured = lip;
    pr.worst_margin = 1.0 / r + kTolLipschitz - lip;
    pr.pass = pr.worst_margin >= 0.0;
    rep.records.push_back(pr);
  }

  // balls of radius 0.99 r roll freely
  {
    PropertyRecord pr;
    pr.name = "rolling-ball";
    pr.detail =
        "B(s - 0.99r N(s), 0.99r) stays inside the body; at each prescribed "
        "datum the ball actually touches the boundary there";
    pr.tolerance = kTolExact;
    double rr = 0.99 * r;
    // contact condition at the prescribed points: the rolled ball must touch
    // the boundary at the datum, so the datum cannot sit strictly inside
    for (const auto& d : body.source().data) {
      double sd = body.signed_distance(d.point);
      if (std::abs(sd) > 1e-7) {
        pr.pass = false;
        if (pr.witnesses.size() < 4) pr.witnesses.push_back(d.point);
      }
    }
    int nb = std::min<int>(static_cast<int>(bnd.size()), 1000);
    int nball = std::min(samples, 1000);
    double worst = -std::numeric_limits<double>::infinity();
    for (int k = 0; k < nb && pr.witnesses.size() < 4; ++k) {
      Vector c = bnd[k] - rr * nrm[k];
      for (int q = 0; q < nball; ++q) {
        Vector p = c + rr * gauss_dir(rng, n);
        double sd = body.signed_distance(p);
        worst = std::max(worst, sd);
        if (sd > kTolExact) {
          pr.pass = false;
          pr.witnesses.push_back(p);
          break;
        }
      }
    }
    pr.samples = nb * nball;
    pr.measured = worst;
    pr.worst_margin = kTolExact - worst;
    rep.records.push_back(pr);
  }

  // pairwise normal inequality at constant r/2
  {
    PropertyRecord pr;
    pr.name = "normal-inequality";
    pr.detail = "<N(t), t-s> >= r/2 |N(s)-N(t)|^2 on boundary pairs";
    pr.tolerance = kTolExact;
    double worst = std::numeric_limits<double>::infinity();
    pr.samples = for_pairs(static_cast<int>(bnd.size()), kPairCap,
                           [&](int i, int j) {
                             for (int swap = 0; swap < 2; ++swap) {
                               int s = swap ? j : i, t = swap ? i : j;
                               double lhs = nrm[t].dot(bnd[t] - bnd[s]);
                               double gap2 = (nrm[s] - nrm[t]).squaredNorm();
                               double m = lhs - 0.5 * r * gap2;
                               if (m < worst) worst = m;
                               if (m < -kTolExact && pr.witnesses.size() < 2) {
                                 pr.pass = false;
                                 pr.witnesses.push_back(bnd[s]);
                                 pr.witnesses.push_back(bnd[t]);
                               }
                             }
                           });
    pr.measured = worst;
    pr.worst_margin = worst + kTolExact;
    if (worst < -kTolExact) pr.pass = false;
    rep.records.push_back(pr);
  }

  // gauge gradient: closed form vs finite differences, Lipschitz measured
  {
    PropertyRecord pr;
    pr.name = "gauge-gradient";
    pr.detail =
        "finite-difference gradient of the gauge matches "
        "N(P)/<N(P), P-origin>; Lipschitz constant on {mu >= 1/2} measured";
    pr.tolerance = kTolFiniteDiff;
    Vector origin = Vector::Zero(n);
    for (const auto& d : body.source().data) origin += d.point;
    origin /= static_cast<double>(body.source().data.size());
    if (body.signed_distance(origin) >= -1e-6) {
      pr.note = "skipped: data centroid not strictly interior";
      pr.samples = 0;
      rep.records.push_back(pr);
    } else {
      std::uniform_real_distribution<double> tau(0.6, 1.4);
      int m = std::min<int>(static_cast<int>(bnd.size()), 200);
      double worst = 0.0, lip = 0.0;
      std::vector<Vector> grads;
      std::vector<Vector> pts;
      const double h = 1e-5;
      for (int k = 0; k < m; ++k) {
        Vector x = origin + tau(rng) * (bnd[k] - origin);
        double mu = body.gauge(x, origin);
        Vector bpt = origin + (x - origin) / mu;
        Vector nb = body.boundary_normal(bpt);
        Vector closed = nb / nb.dot(bpt - origin);
        Vector fd(n);
        for (int i = 0; i < n; ++i) {
          Vector e = Vector::Zero(n);
          e[i] = h;
          fd[i] = (body.gauge(x + e, origin) - body.gauge(x - e, origin)) /
                  (2.0 * h);
        }
        double dev = (fd - closed).norm();
        worst = std::max(worst, dev);
        if (dev > kTolFiniteDiff && pr.witnesses.size() < 2) {
          pr.pass = false;
          pr.witnesses.push_back(x);
        }
        grads.push_back(closed);
        pts.push_back(x);
      }
      for_pairs(m, kPairCap, [&](int i, int j) {
        double ds = (pts[i] - pts[j]).norm();
        if (ds > 1e-6)
          lip = std::max(lip, (grads[i] - grads[j]).norm() / ds);
      });
      pr.samples = m;
      pr.measured = lip;
      pr.worst_margin = kTolFiniteDiff - worst;
      rep.records.push_back(pr);
    }
  }

  return rep;
}

VerificationReport verify_signed_distance(const BodyC11& body, double epsilon,
                                          int samples, std::uint64_t seed) {
  if (!(epsilon > 0.0) || !(epsilon < 1.0))
    throw std::invalid_argument("verify_signed_distance: epsilon in (0,1)");
  VerificationReport rep;
  rep.subject = "signed-distance";
  rep.seed = seed;
  rep.samples = samples;
  const double r = body.radius();
  const int n = body.dim();
  std::mt19937_64 rng(seed);

  // points in U_eps = {b_V >= -(1-eps) r}, stratified around the boundary
  std::vector<Vector> bnd = body.sample_boundary(samples, seed);
  std::uniform_real_distribution<double> off(-(1.0 - epsilon) * r * 0.999, r);
  std::vector<Vector> pts;
  pts.reserve(bnd.size());
  for (size_t k = 0; k < bnd.size(); ++k)
    pts.push_back(bnd[k] + off(rng) * body.boundary_normal(bnd[k]));

  // unique-projection identity x - P(x) = b(x) N(P(x))
  {
    PropertyRecord pr;
    pr.name = "projection-identity";
    pr.detail = "x - P(x) = b_V(x) N(P(x)) on U_eps";
    pr.tolerance = 1e-7;
    double worst = 0.0;
    for (const auto& x : pts) {
      double b = body.signed_distance(x);
      Vector p = body.project_boundary(x);
      Vector nrm = body.boundary_normal(p);
      double dev = (x - p - b * nrm).norm();
      worst = std::max(worst, dev);
      if (dev > 1e-7 && pr.witnesses.size() < 2) {
        pr.pass = false;
        pr.witnesses.push_back(x);
      }
    }
    pr.samples = static_cast<int>(pts.size());
    pr.measured = worst;
    pr.worst_margin = 1e-7 - worst;
    rep.records.push_back(pr);
  }

  // monotonicity of P on U_eps
  {
    PropertyRecord pr;
    pr.name = "projection-monotonicity";
    pr.detail = "<P(x)-P(y), x-y> >= eps |P(x)-P(y)|^2 on U_eps";
    pr.tolerance = kTolExact;
    std::vector<Vector> proj;
    proj.reserve(pts.size());
    for (const auto& x : pts) proj.push_back(body.project_boundary(x));
    double worst = std::numeric_limits<double>::infinity();
    pr.samples = for_pairs(static_cast<int>(pts.size()), kPairCap,
                           [&](int i, int j) {
                             Vector dp = proj[i] - proj[j];
                             double m = dp.dot(pts[i] - pts[j]) -
                                        epsilon * dp.squaredNorm();
                             worst = std::min(worst, m);
                             if (m < -kTolExact && pr.witnesses.size() < 2) {
                               pr.pass = false;
                               pr.witnesses.push_back(pts[i]);
                               pr.witnesses.push_back(pts[j]);
                             }
                           });
    pr.measured = worst;
    pr.worst_margin = worst + kTolExact;
    rep.records.push_back(pr);
  }

  // gradient of b_V equals N(P(x)), checked by central differences
  {
    PropertyRecord pr;
    pr.name = "gradient-formula";
    pr.detail = "finite-difference grad b_V matches N(P(x)) on U_eps";
    pr.tolerance = kTolFiniteDiff;
    const double h = 1e-5;
    int m = std::min<int>(static_cast<int>(pts.size()), 200);
    double worst = 0.0;
    for (int k = 0; k < m; ++k) {
      const Vector& x = pts[k];
      Vector nrm = body.boundary_normal(body.project_boundary(x));
      Vector fd(n);
      for (int i = 0; i < n; ++i) {
        Vector e = Vector::Zero(n);
        e[i] = h;
        fd[i] = (body.signed_distance(x + e) - body.signed_distance(x - e)) /
                (2.0 * h);
      }
      double dev = (fd - nrm).norm();
      worst = std::max(worst, dev);
      if (dev > kTolFiniteDiff && pr.witnesses.size() < 2) {
        pr.pass = false;
        pr.witnesses.push_back(x);
      }
    }
    pr.samples = m;
    pr.measured = worst;
    pr.worst_margin = kTolFiniteDiff - worst;
    rep.records.push_back(pr);
  }

  // Lipschitz constant of grad b_V on U_eps, bound (1/eps)(1/r)
  {
    PropertyRecord pr;
    pr.name = "gradient-lipschitz";
    pr.detail = "lip(grad b_V, U_eps) <= (1/eps)(1/r)";
    pr.tolerance = kTolLipschitz;
    std::vector<Vector> grads;
    grads.reserve(pts.size());
    for (const auto& x : pts)
      grads.push_back(body.boundary_normal(body.project_boundary(x)));
    double lip = 0.0;
    pr.samples = for_pairs(static_cast<int>(pts.size()), kPairCap,
                           [&](int i, int j) {
                             double ds = (pts[i] - pts[j]).norm();
                             if (ds > 1e-6)
                               lip = std::max(lip,
                                              (grads[i] - grads[j]).norm() / ds);
                           });
    pr.measured = lip;
    pr.worst_margin = (1.0 / epsilon) * (1.0 / r) + kTolLipschitz - lip;
    pr.pass = pr.worst_margin >= 0.0;
    rep.records.push_back(pr);
  }

  // convexity on random segments
  {
    PropertyRecord pr;
    pr.name = "convexity";
    pr.detail = "midpoint inequality for b_V on random segments";
    pr.tolerance = 1e-10;
    Vector c = body.interior_point();
    double span = 0.0;
    for (const auto& d : body.source().data)
      span = std::max(span, (d.point - c).norm());
    span = 2.0 * (span + r);
    std::uniform_real_distribution<double> u(-span, span);
    double worst = std::numeric_limits<double>::infinity();
    int m = std::max(samples, 1000);
    for (int k = 0; k < m; ++k) {
      Vector x(n), y(n);
      for (int i = 0; i < n; ++i) {
        x[i] = c[i] + u(rng);
        y[i] = c[i] + u(rng);
      }
      double mid = body.signed_distance(0.5 * (x + y));
      double margin = 0.5 * (body.signed_distance(x) + body.signed_distance(y)) -
                      mid;
      worst = std::min(worst, margin);
      if (margin < -1e-10 && pr.witnesses.size() < 2) {
        pr.pass = false;
        pr.witnesses.push_back(x);
        pr.witnesses.push_back(y);
      }
    }
    pr.samples = m;
    pr.measured = worst;
    pr.worst_margin = worst + 1e-10;
    rep.records.push_back(pr);
  }

  return rep;
}

VerificationReport verify_c1omega(const BodyC1Omega& body, int samples,
                                  std::uint64_t seed) {
  VerificationReport rep;
  rep.subject = "c1omega";
  rep.seed = seed;
  rep.samples = samples;
  const NormSpace& space = body.source().space;
  std::mt19937_64 rng(seed);

  const bool hilbert = body.variant() == C1OmegaVariant::HilbertOmega;
  auto omega = [&](double t) {
    return hilbert ? body.modulus().omega(t) : std::pow(t, body.alpha());
  };
  auto omega_inv = [&](double s) {
    return hilbert ? body.modulus().omega_inverse(s)
                   : std::pow(s, 1.0 / body.alpha());
  };
  auto phi = [&](double t) {
    return hilbert ? body.modulus().phi(t)
                   : std::pow(t, 1.0 + body.alpha()) / (1.0 + body.alpha());
  };

  // interpolation at the data
  {
    PropertyRecord pr;
    pr.name = "interpolation";
    pr.detail = "F = 1 and grad F = datum normal on the data";
    pr.tolerance = 1e-4;
    double worstF = 0.0, worstG = 0.0;
    for (const auto& d : body.source().data) {
      double f = std::abs(body.eval_F(d.point) - 1.0);
      double g = space.dual_norm(body.grad_F(d.point) - d.normal);
      worstF = std::max(worstF, f);
      worstG = std::max(worstG, g);
      if ((f > 1e-5 || g > 1e-4) && pr.witnesses.size() < 2) {
        pr.pass = false;
        pr.witnesses.push_back(d.point);
      }
    }
    pr.samples = static_cast<int>(body.source().data.size());
    pr.measured = std::max(worstF, worstG);
    pr.worst_margin = 1e-4 - pr.measured;
    rep.records.push_back(pr);
  }

  std::vector<Vector> bnd = body.sample_boundary(samples, seed);
  std::vector<Vector> nrm;
  nrm.reserve(bnd.size());
  for (const auto& s : bnd) {
    Vector g = body.grad_F(s);
    nrm.push_back(g / space.dual_norm(g));
  }

  // fitted modulus constant of the Gauss map
  double m_fit = 0.0;
  {
    PropertyRecord pr;
    pr.name = "gauss-modulus";
    pr.detail = "fitted M with |N(s)-N(t)| <= M omega(|s-t|) on pairs";
    pr.tolerance = 0.0;
    pr.samples = for_pairs(static_cast<int>(bnd.size()), kPairCap,
                           [&](int i, int j) {
                             double ds = space.norm(bnd[i] - bnd[j]);
                             if (ds < 1e-7) return;
                             double ratio =
                                 space.dual_norm(nrm[i] - nrm[j]) / omega(ds);
                             m_fit = std::max(m_fit, ratio);
                           });
    pr.measured = m_fit;
    pr.pass = std::isfinite(m_fit);
    pr.worst_margin = 0.0;
    pr.note = "sampled sup statistic; grows towards the true constant";
    rep.records.push_back(pr);
  }

  // pairwise dual inequality with its own fitted constant
  {
    PropertyRecord pr;
    pr.name = "dual-inequality";
    pr.detail =
        "<N(t), t-s> >= (|dN|/2) omega^{-1}(|dN| / 4M) with fitted M";
    pr.tolerance = 1e-6;
    double m3 = 0.0;
    double worst_lhs = std::numeric_limits<double>::infinity();
    pr.samples = for_pairs(
        static_cast<int>(bnd.size()), kPairCap, [&](int i, int j) {
          for (int swap = 0; swap < 2; ++swap) {
            int s = swap ? j : i, t = swap ? i : j;
            double lhs = nrm[t].dot(bnd[t] - bnd[s]);
            double gap = space.dual_norm(nrm[s] - nrm[t]);
            worst_lhs = std::min(worst_lhs, lhs);
            if (lhs < -1e-6 && pr.witnesses.size() < 2) {
              pr.pass = false;
              pr.witnesses.push_back(bnd[s]);
              pr.witnesses.push_back(bnd[t]);
            }
            if (gap < 1e-9 || lhs <= 0.0) continue;
            // smallest M making this pair satisfy the inequality
            m3 = std::max(m3, gap / (4.0 * omega(2.0 * lhs / gap)));
          }
        });
    pr.measured = m3;
    pr.worst_margin = worst_lhs + 1e-6;
    pr.note = "fitted per its own statement; fails only on negative slack";
    rep.records.push_back(pr);
  }

  // supporting-region inclusion with the fitted Gauss constant
  {
    PropertyRecord pr;
    pr.name = "support-region";
    pr.detail =
        "W_x = {p : <N(x), x-p> >= M phi(2|x-p|)} lies in the body and meets "
        "the level set only at x";
    pr.tolerance = 1e-6;
    double M = std::max(m_fit, 1e-6);
    int nx = std::min<int>(static_cast<int>(bnd.size()), 50);
    std::uniform_real_distribution<double> uu(-1.0, 1.0);
    double span = 0.0;
    for (int i = 0; i < body.dim(); ++i)
      span = std::max(span, body.box_hi()[i] - body.box_lo()[i]);
    int used = 0;
    for (int k = 0; k < nx; ++k) {
      const Vector& x = bnd[k];
      for (int q = 0; q < 200; ++q) {
        Vector p(body.dim());
        bool inside = true;
        for (int i = 0; i < body.dim(); ++i) {
          p[i] = x[i] + 0.25 * span * uu(rng);
          inside = inside && p[i] >= body.box_lo()[i] &&
                   p[i] <= body.box_hi()[i];
        }
        if (!inside) continue;  // true support-region points never leave it
        double depth = nrm[k].dot(x - p);
        if (depth < M * phi(2.0 * space.norm(x - p))) continue;  // not in W_x
        ++used;
        double f = body.eval_F(p);
        if (f > 1.0 + 1e-6 && pr.witnesses.size() < 2) {
          pr.pass = false;
          pr.witnesses.push_back(p);
        }
      }
      // the only sampled level-set point in W_x should be x itself
      for (size_t t = 0; t < bnd.size(); ++t) {
        if (static_cast<int>(t) == k) continue;
        double depth = nrm[k].dot(x - bnd[t]);
        if (depth >= M * phi(2.0 * space.norm(x - bnd[t])) + 1e-9 &&
            space.norm(x - bnd[t]) > 1e-6) {
          pr.pass = false;
          if (pr.witnesses.size() < 2) pr.witnesses.push_back(bnd[t]);
        }
      }
    }
    pr.samples = used;
    pr.measured = M;
    pr.worst_margin = pr.pass ? 0.0 : -1.0;
    rep.records.push_back(pr);
  }

  // gradient pinching on the level set
  {
    PropertyRecord pr;
    pr.name = "gradient-pinching";
    pr.detail = "grad norm on {F=1} bounded below by the construction constant";
    pr.tolerance = kTolExact;
    LevelSetBoundsReport b = body.level_set_bounds_check(
        std::min(samples, 500), seed ^ 0x9e3779b97f4a7c15ull);
    pr.samples = std::min(samples, 500);
    pr.measured = b.grad_min;
    pr.worst_margin = b.grad_min - b.lower_bound + kTolExact;
    pr.pass = b.lower_ok;
    pr.witnesses = b.witnesses;
    pr.note = "grad range [" + std::to_string(b.grad_min) + ", " +
              std::to_string(b.grad_max) + "], lower bound " +
              std::to_string(b.lower_bound);
    rep.records.push_back(pr);
  }

  return rep;
}

}  // namespace cvxjet
