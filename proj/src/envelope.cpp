#include "cvxjet/envelope.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace cvxjet {

std::size_t GridFunction::size() const {
  std::size_t s = 1;
  for (int r : res) s *= static_cast<std::size_t>(r);
  return s;
}

static std::size_t flat_index(const std::vector<int>& res,
                              const std::vector<int>& idx) {
  std::size_t f = 0;
  for (size_t a = 0; a < res.size(); ++a) f = f * res[a] + idx[a];
  return f;
}

double& GridFunction::at(const std::vector<int>& idx) {
  return values[flat_index(res, idx)];
}
double GridFunction::at(const std::vector<int>& idx) const {
  return values[flat_index(res, idx)];
}

Vector GridFunction::node(const std::vector<int>& idx) const {
  Vector x(dim());
  for (int a = 0; a < dim(); ++a) x[a] = lo[a] + idx[a] * spacing(a);
  return x;
}

GridFunction GridFunction::sample(
    const std::function<double(const Vector&)>& f, const Vector& lo,
    const Vector& hi, const std::vector<int>& res) {
  if (res.empty() || res.size() > 3)
    throw std::invalid_argument("GridFunction: dimension must be 1..3");
  for (int r : res)
    if (r < 2) throw std::invalid_argument("GridFunction: resolution >= 2");
  GridFunction g;
  g.lo = lo;
  g.hi = hi;
  g.res = res;
  g.values.resize(g.size());
  std::vector<int> idx(res.size(), 0);
  for (std::size_t k = 0; k < g.values.size(); ++k) {
    g.values[k] = f(g.node(idx));
    for (int a = static_cast<int>(res.size()) - 1; a >= 0; --a) {
      if (++idx[a] < res[a]) break;
      idx[a] = 0;
    }
  }
  return g;
}

double GridFunction::interpolate(const Vector& x) const {
  const int n = dim();
  std::vector<int> base(n);
  std::vector<double> frac(n);
  for (int a = 0; a < n; ++a) {
    double h = spacing(a);
    double t = (x[a] - lo[a]) / h;
    t = std::clamp(t, 0.0, static_cast<double>(res[a] - 1));
    int i = std::min(static_cast<int>(t), res[a] - 2);
    base[a] = i;
    frac[a] = t - i;
  }
  double acc = 0.0;
  std::vector<int> idx(n);
  for (int corner = 0; corner < (1 << n); ++corner) {
    double w = 1.0;
    for (int a = 0; a < n; ++a) {
      bool up = corner & (1 << a);
      idx[a] = base[a] + (up ? 1 : 0);
      w *= up ? frac[a] : 1.0 - frac[a];
    }
    if (w != 0.0) acc += w * at(idx);
  }
  return acc;
}

std::vector<double> legendre_1d(const std::vector<double>& x,
                                const std::vector<double>& f,
                                const std::vector<double>& s) {
  const int n = static_cast<int>(x.size());
  // lower convex hull of (x_i, f_i)
  std::vector<int> hull;
  hull.reserve(n);
  for (int i = 0; i < n; ++i) {
    while (hull.size() >= 2) {
      int a = hull[hull.size() - 2], b = hull.back();
      // pop b when slope(a,b) >= slope(b,i)
      if ((f[b] - f[a]) * (x[i] - x[b]) >= (f[i] - f[b]) * (x[b] - x[a]))
        hull.pop_back();
      else
        break;
    }
    hull.push_back(i);
  }
  std::vector<double> out(s.size());
  std::size_t h = 0;
  for (std::size_t j = 0; j < s.size(); ++j) {
    while (h + 1 < hull.size()) {
      int a = hull[h], b = hull[h + 1];
      double edge = (f[b] - f[a]) / (x[b] - x[a]);
      if (edge <= s[j])
        ++h;
      else
        break;
    }
    out[j] = s[j] * x[hull[h]] - f[hull[h]];
  }
  return out;
}

namespace {
// applies the 1D transform along `axis`, remapping that axis to the grid
// [dlo, dhi] x dres; negates the input values when `negate` is set (the
// factorization conjugates -A_k for every axis after the first).
GridFunction transform_axis(const GridFunction& f, int axis, double dlo,
                            double dhi, int dres, bool negate) {
  GridFunction out;
  out.lo = f.lo;
  out.hi = f.hi;
  out.res = f.res;
  out.lo[axis] = dlo;
  out.hi[axis] = dhi;
  out.res[axis] = dres;
  out.values.resize(out.size());

  const int n = f.dim();
  std::vector<double> xs(f.res[axis]), slopes(dres);
  for (int i = 0; i < f.res[axis]; ++i)
    xs[i] = f.lo[axis] + i * f.spacing(axis);
  for (int j = 0; j < dres; ++j)
    slopes[j] = dlo + j * (dres > 1 ? (dhi - dlo) / (dres - 1) : 0.0);

  std::vector<int> idx(n, 0);
  std::vector<double> line(f.res[axis]);
  // iterate over all lines (idx[axis] stays 0)
  for (;;) {
    for (int i = 0; i < f.res[axis]; ++i) {
      idx[axis] = i;
      double v = f.at(idx);
      line[i] = negate ? -v : v;
    }
    idx[axis] = 0;
    std::vector<double> tr = legendre_1d(xs, line, slopes);
    std::vector<int> oidx = idx;
    for (int j = 0; j < dres; ++j) {
      oidx[axis] = j;
      out.at(oidx) = tr[j];
    }
    // advance over the remaining axes
    int a = n - 1;
    for (; a >= 0; --a) {
      if (a == axis) continue;
      if (++idx[a] < f.res[a]) break;
      idx[a] = 0;
    }
    if (a < 0) break;
  }
  return out;
}

void slope_range(const GridFunction& f, int axis, double& smin, double& smax) {
  smin = std::numeric_limits<double>::infinity();
  smax = -smin;
  const int n = f.dim();
  double h = f.spacing(axis);
  std::vector<int> idx(n, 0);
  for (;;) {
    for (int i = 0; i + 1 < f.res[axis]; ++i) {
      idx[axis] = i;
      double a = f.at(idx);
      idx[axis] = i + 1;
      double b = f.at(idx);
      double s = (b - a) / h;
      smin = std::min(smin, s);
      smax = std::max(smax, s);
    }
    idx[axis] = 0;
    int a = n - 1;
    for (; a >= 0; --a) {
      if (a == axis) continue;
      if (++idx[a] < f.res[a]) break;
      idx[a] = 0;
    }
    if (a < 0) break;
  }
}
}  // namespace

GridFunction discrete_legendre(const GridFunction& f, const Vector& dual_lo,
                               const Vector& dual_hi,
                               const std::vector<int>& dual_res) {
  GridFunction cur = f;
  for (int a = 0; a < f.dim(); ++a)
    cur = transform_axis(cur, a, dual_lo[a], dual_hi[a], dual_res[a], a > 0);
  return cur;
}

GridFunction discrete_legendre(const GridFunction& f) {
  const int n = f.dim();
  Vector dlo(n), dhi(n);
  for (int a = 0; a < n; ++a) {
    double smin, smax;
    slope_range(f, a, smin, smax);
    double pad = 0.1 * (smax - smin) + 1e-9;
    dlo[a] = smin - pad;
    dhi[a] = smax + pad;
  }
  return discrete_legendre(f, dlo, dhi, f.res);
}

GridBiconjugate::GridBiconjugate(const std::function<double(const Vector&)>& g,
                                 const Vector& lo, const Vector& hi,
                                 const std::vector<int>& res) {
  GridFunction primal = GridFunction::sample(g, lo, hi, res);
  if (res.size() == 1) {
    // 1D: the biconjugate at grid scale is exactly the lower convex hull of
    // the sampled points; no dual-grid quantization
    const int n = res[0];
    const std::vector<double>& f = primal.values;
    std::vector<int> hull;
    for (int i = 0; i < n; ++i) {
      while (hull.size() >= 2) {
        int a = hull[hull.size() - 2], b = hull.back();
        if ((f[b] - f[a]) * (i - b) <= (f[i] - f[b]) * (b - a)) break;
        hull.pop_back();
      }
      hull.push_back(i);
    }
    envelope_ = primal;
    for (size_t k = 0; k + 1 < hull.size(); ++k) {
      int a = hull[k], b = hull[k + 1];
      for (int i = a; i <= b; ++i) {
        double t = static_cast<double>(i - a) / (b - a);
        envelope_.values[i] = (1.0 - t) * f[a] + t * f[b];
      }
    }
    return;
  }
  GridFunction conj = discrete_legendre(primal);
  envelope_ = discrete_legendre(conj, lo, hi, res);
}

JetEnvelope::JetEnvelope(std::vector<Vector> points, std::vector<Vector> xis,
                         NormSpace space, Kernel kernel)
    : points_(std::move(points)),
      xis_(std::move(xis)),
      space_(space),
      kernel_(std::move(kernel)) {
  if (points_.empty() || points_.size() != xis_.size())
    throw std::invalid_argument("JetEnvelope: mismatched piece lists");
}

double JetEnvelope::eval_g(const Vector& x) const {
  double best = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < points_.size(); ++i) {
    Vector d = x - points_[i];
    best = std::min(best,
                    1.0 + xis_[i].dot(d) + kernel_.k(space_.norm(d)));
  }
  return best;
}

int JetEnvelope::argmin_piece(const Vector& x) const {
  double best = std::numeric_limits<double>::infinity();
  int arg = 0;
  for (size_t i = 0; i < points_.size(); ++i) {
    Vector d = x - points_[i];
    double v = 1.0 + xis_[i].dot(d) + kernel_.k(space_.norm(d));
    if (v < best) {
      best = v;
      arg = static_cast<int>(i);
    }
  }
  return arg;
}

double JetEnvelope::eval_gstar(const Vector& xi) const {
  double best = -std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < points_.size(); ++i) {
    double s = space_.dual_norm(xi - xis_[i]);
    best = std::max(best, kernel_.conj(s) + xi.dot(points_[i]) - 1.0);
  }
  return best;
}

Vector JetEnvelope::gstar_piece_grad(const Vector& xi, int i) const {
  Vector d = xi - xis_[i];
  double s = space_.dual_norm(d);
  if (s <= 1e-300) return points_[i];
  double t = kernel_.conj_deriv(s);
  NormSpace dual = space_.is_euclidean()
                       ? space_
                       : NormSpace::lp(space_.dim, space_.dual_exponent());
  return points_[i] + t * duality_map(d, dual);
}

JetEnvelope::EnvelopeValue JetEnvelope::envelope(const Vector& x) const {
  Vector xi = xis_[argmin_piece(x)];
  auto psi = [&](const Vector& z) { return x.dot(z) - eval_gstar(z); };
  double val = psi(xi);
  const double tol = 1e-10 * (1.0 + x.norm());
  double eps_act = 1e-9;
  const int cap = 10000;

  for (int it = 0; it < cap; ++it) {
    // near-active pieces at xi
    double vmax = -std::numeric_limits<double>::infinity();
    std::vector<double> pv(points_.size());
    for (size_t i = 0; i < points_.size(); ++i) {
      double s = space_.dual_norm(xi - xis_[i]);
      pv[i] = kernel_.conj(s) + xi.dot(points_[i]) - 1.0;
      vmax = std::max(vmax, pv[i]);
    }
    Polytope sub;  // subgradients of -psi: grad v_i - x over active pieces
    double gate = eps_act * (1.0 + std::abs(vmax));
    for (size_t i = 0; i < points_.size(); ++i)
      if (pv[i] >= vmax - gate)
        sub.vertices.push_back(gstar_piece_grad(xi, static_cast<int>(i)) - x);
    Vector ghat = project_polytope(Vector::Zero(xi.size()), sub).point;
    double gn = ghat.norm();
    if (gn <= tol) break;
    Vector u = -ghat;
    double t = 1.0;
    bool moved = false;
    for (int bs = 0; bs < 60; ++bs) {
      double cand = psi(xi + t * u);
      if (cand > val + 1e-4 * t * gn * gn) {
        // expand while it keeps paying off
        while (t < 1e8) {
          double more = psi(xi + 2.0 * t * u);
          if (more <= cand) break;
          t *= 2.0;
          cand = more;
        }
        xi += t * u;
        val = cand;
        moved = true;
        break;
      }
      t *= 0.5;
    }
    if (!moved) {
      // no representable improvement left: accept if the supergradient is
      // already small, otherwise widen the active set and retry
      if (gn <= 1e-6 * (1.0 + x.norm())) break;
      eps_act *= 10.0;
      if (eps_act > 1e-2)
        throw NumericalError("JetEnvelope: concave ascent stalled", gn);
    }
  }
  return {val, xi};
}

double cross_validate(const JetEnvelope& direct, const GridBiconjugate& grid,
                      const std::vector<Vector>& queries, double tol) {
  double worst = 0.0;
  for (const auto& q : queries) {
    double a = direct.envelope(q).value;
    double b = grid.eval(q);
    double d = std::abs(a - b);
    if (d > worst) worst = d;
    if (d > tol) {
      std::ostringstream os;
      os << "envelope backends disagree at query: direct=" << a
         << " grid=" << b << " |diff|=" << d << " tol=" << tol;
      throw NumericalError(os.str(), d);
    }
  }
  return worst;
}

}  // namespace cvxjet
