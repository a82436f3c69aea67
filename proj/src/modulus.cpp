#include "cvxjet/modulus.hpp"

#include <algorithm>
#include <cmath>

namespace cvxjet {

Modulus Modulus::power(double K, double alpha) {
  if (!(K > 0.0)) throw std::invalid_argument("Modulus: K must be > 0");
  if (!(alpha > 0.0) || alpha > 1.0)
    throw std::invalid_argument("Modulus: alpha must lie in (0, 1]");
  Modulus m;
  m.power_ = true;
  m.K_ = K;
  m.alpha_ = alpha;
  return m;
}

Modulus Modulus::tabulated(std::vector<double> t, std::vector<double> w) {
  if (t.size() != w.size() || t.size() < 2)
    throw std::invalid_argument("Modulus: need at least two samples");
  if (t.front() != 0.0 || w.front() != 0.0)
    throw std::invalid_argument("Modulus: first sample must be (0, 0)");
  for (size_t i = 1; i < t.size(); ++i) {
    if (!(t[i] > t[i - 1]) || !(w[i] > w[i - 1]))
      throw std::invalid_argument("Modulus: samples must be strictly increasing");
  }
  // concavity: slopes non-increasing
  double prev = std::numeric_limits<double>::infinity();
  for (size_t i = 1; i < t.size(); ++i) {
    double s = (w[i] - w[i - 1]) / (t[i] - t[i - 1]);
    if (s > prev * (1.0 + 1e-12))
      throw std::invalid_argument("Modulus: samples are not concave");
    prev = s;
  }
  if (!(prev > 0.0))
    throw std::invalid_argument("Modulus: final slope must be positive");
  Modulus m;
  m.power_ = false;
  m.t_ = std::move(t);
  m.w_ = std::move(w);
  return m;
}

double Modulus::operator()(double t) const {
  if (t < 0.0) throw std::domain_error("Modulus: negative argument");
  if (power_) return K_ * std::pow(t, alpha_);
  if (t >= t_.back()) {
    size_t k = t_.size() - 1;
    double slope = (w_[k] - w_[k - 1]) / (t_[k] - t_[k - 1]);
    return w_.back() + slope * (t - t_.back());
  }
  auto it = std::upper_bound(t_.begin(), t_.end(), t);
  size_t k = static_cast<size_t>(it - t_.begin());
  if (k == 0) return 0.0;
  double s = (w_[k] - w_[k - 1]) / (t_[k] - t_[k - 1]);
  return w_[k - 1] + s * (t - t_[k - 1]);
}

double Modulus::inverse(double s) const {
  if (s < 0.0) throw std::domain_error("Modulus: negative argument");
  if (power_) return std::pow(s / K_, 1.0 / alpha_);
  if (s >= w_.back()) {
    size_t k = t_.size() - 1;
    double slope = (w_[k] - w_[k - 1]) / (t_[k] - t_[k - 1]);
    return t_.back() + (s - w_.back()) / slope;
  }
  auto it = std::upper_bound(w_.begin(), w_.end(), s);
  size_t k = static_cast<size_t>(it - w_.begin());
  if (k == 0) return 0.0;
  double slope = (w_[k] - w_[k - 1]) / (t_[k] - t_[k - 1]);
  return t_[k - 1] + (s - w_[k - 1]) / slope;
}

namespace {
double simpson(const std::function<double(double)>& f, double a, double fa,
               double b, double fb, double m, double fm) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adsimp_rec(const std::function<double(double)>& f, double a, double fa,
                  double b, double fb, double m, double fm, double whole,
                  double tol, int depth) {
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double left = simpson(f, a, fa, m, fm, lm, flm);
  double right = simpson(f, m, fm, b, fb, rm, frm);
  double delta = left + right - whole;
  if (depth >= 20 || std::abs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  return adsimp_rec(f, a, fa, m, fm, lm, flm, left, tol / 2.0, depth + 1) +
         adsimp_rec(f, m, fm, b, fb, rm, frm, right, tol / 2.0, depth + 1);
}
}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double tol) {
  if (a == b) return 0.0;
  double m = 0.5 * (a + b);
  double fa = f(a), fb = f(b), fm = f(m);
  double whole = simpson(f, a, fa, b, fb, m, fm);
  return adsimp_rec(f, a, fa, b, fb, m, fm, whole, tol, 0);
}

namespace {
// Exact integral of the piecewise-linear interpolant through (t_i, w_i) from
// 0 to x, with linear extension past the last knot: trapezoid per segment.
double piecewise_integral(const std::vector<double>& t,
                          const std::vector<double>& w, double x,
                          const std::function<double(double)>& extend) {
  double acc = 0.0;
  for (size_t i = 1; i < t.size() && t[i - 1] < x; ++i) {
    double seg_end = std::min(t[i], x);
    double frac = (seg_end - t[i - 1]) / (t[i] - t[i - 1]);
    double w_end = w[i - 1] + frac * (w[i] - w[i - 1]);
    acc += 0.5 * (w[i - 1] + w_end) * (seg_end - t[i - 1]);
  }
  if (x > t.back()) acc += 0.5 * (w.back() + extend(x)) * (x - t.back());
  return acc;
}
}  // namespace

double ModulusCalculus::omega(double t) const { return m_(t); }
double ModulusCalculus::omega_inverse(double s) const { return m_.inverse(s); }

double ModulusCalculus::phi(double t) const {
  if (t < 0.0) throw std::domain_error("phi: negative argument");
  if (m_.is_power())
    return m_.K() * std::pow(t, 1.0 + m_.alpha()) / (1.0 + m_.alpha());
  return piecewise_integral(m_.knots(), m_.values(), t,
                            [&](double x) { return m_(x); });
}

double ModulusCalculus::phi_conjugate(double s) const {
  if (s < 0.0) throw std::domain_error("phi_conjugate: negative argument");
  if (m_.is_power()) {
    double a = m_.alpha();
    return a / (1.0 + a) * std::pow(m_.K(), -1.0 / a) *
           std::pow(s, 1.0 + 1.0 / a);
  }
  // omega^{-1} is piecewise linear with knots at the sampled values
  return piecewise_integral(m_.values(), m_.knots(), s,
                            [&](double u) { return m_.inverse(u); });
}

double ModulusCalculus::phi_inverse(double v) const {
  if (v < 0.0) throw std::domain_error("phi_inverse: negative argument");
  if (v == 0.0) return 0.0;
  if (m_.is_power()) {
    double a = m_.alpha();
    return std::pow((1.0 + a) * v / m_.K(), 1.0 / (1.0 + a));
  }
  double hi = 1.0;
  while (phi(hi) < v) hi *= 2.0;
  double lo = 0.0;
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    if (phi(mid) < v)
      lo = mid;
    else
      hi = mid;
    if (hi - lo <= 1e-14 * (1.0 + hi)) break;
  }
  return 0.5 * (lo + hi);
}

}  // namespace cvxjet
