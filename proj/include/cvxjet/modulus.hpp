#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

namespace cvxjet {

/// Modulus of continuity: concave, strictly increasing, omega(0) = 0,
/// omega(t) -> inf. Either the power family K t^alpha or a tabulated modulus
/// with monotone piecewise-linear interpolation (which preserves concavity of
/// the samples) and linear extension beyond the last knot.
class Modulus {
 public:
  static Modulus power(double K, double alpha);
  static Modulus tabulated(std::vector<double> t, std::vector<double> w);

  double operator()(double t) const;  // omega(t)
  double inverse(double s) const;     // omega^{-1}(s), exact piecewise / closed form

  bool is_power() const { return power_; }
  double K() const { return K_; }
  double alpha() const { return alpha_; }
  const std::vector<double>& knots() const { return t_; }
  const std::vector<double>& values() const { return w_; }

 private:
  Modulus() = default;
  bool power_ = true;
  double K_ = 1.0, alpha_ = 1.0;
  std::vector<double> t_, w_;  // tabulated knots, t_[0] = 0, w_[0] = 0
};

/// A modulus together with the derived calculus used by the feasibility
/// conditions and constructions:
///   phi(t)  = integral_0^t omega
///   phi*(s) = integral_0^s omega^{-1}   (Fenchel conjugate of phi)
/// plus the inverses. Closed forms for the power family; adaptive Simpson
/// quadrature (abs tol 1e-12) and bracketed root-finding otherwise.
class ModulusCalculus {
 public:
  explicit ModulusCalculus(Modulus m) : m_(std::move(m)) {}

  double omega(double t) const;
  double omega_inverse(double s) const;
  double phi(double t) const;
  double phi_conjugate(double s) const;
  double phi_inverse(double v) const;

  const Modulus& modulus() const { return m_; }

 private:
  Modulus m_;
};

/// Adaptive Simpson quadrature, absolute tolerance `tol`, recursion depth
/// capped at 20 (2^20 subintervals).
double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double tol);

}  // namespace cvxjet
