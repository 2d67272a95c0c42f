#pragma once

// Densities on S(q): the q-Hermite weight f_N, the Al-Salam--Chihara weight f_CN and the
// Askey--Wilson conditional density phi. Values are 0 outside S(q) and at its endpoints.
// q = 1 selects the Gaussian formulas.

#include "qaw/awpoly.hpp"
#include "qaw/qcore.hpp"

namespace qaw {

struct SupportInterval {
  double lo;
  double hi;
  bool unbounded;

  bool contains(double x) const { return unbounded || (x >= lo && x <= hi); }
  bool interior(double x) const { return unbounded || (x > lo && x < hi); }
};

/// S(q) = [-2/sqrt(1-q), 2/sqrt(1-q)], or the real line at q = 1.
SupportInterval support(const QParam<double>& q);

struct DensityEval {
  double value;
  int terms;
};

/// w_k(x,y|rho,q) = (1-rho^2 q^{2k})^2 - (1-q) rho q^k (1+rho^2 q^{2k}) x y
///                  + (1-q) rho^2 (x^2+y^2) q^{2k}.
template <class T>
T w_k(int k, const T& x, const T& y, const T& rho, const T& q) {
  if (k < 0) throw DomainError("w_k: k must be nonnegative");
  const T r = rho * ipow(q, k);
  const T r2 = r * r;
  const T one_minus_q = T(1) - q;
  return (T(1) - r2) * (T(1) - r2) - one_minus_q * r * (T(1) + r2) * x * y +
         one_minus_q * r2 * (x * x + y * y);
}

DensityEval f_N(double x, const QParam<double>& q, const TruncationPolicy& policy = {});

/// Requires |rho| < 1 and y strictly inside S(q).
DensityEval f_CN(double x, double y, double rho, const QParam<double>& q,
                 const TruncationPolicy& policy = {});

/// Product form with one truncation length shared by all factors. y and z must be strictly
/// inside S(q).
DensityEval phi_cond(double x, const CondDensityParams<double>& p,
                     const TruncationPolicy& policy = {});

/// phi = f_CN(z|x,rho2) f_CN(x|y,rho1) / f_CN(z|y,rho1 rho2).
double phi_cond_ratio(double x, const CondDensityParams<double>& p,
                      const TruncationPolicy& policy = {});

/// Closed forms at q = 0.
double f_N_free(double x);
double f_CN_free(double x, double y, double rho);
double phi_free(double x, double y, double rho1, double z, double rho2);

/// Gaussian formulas at q = 1.
double f_N_gaussian(double x);
double f_CN_gaussian(double x, double y, double rho);
double phi_gaussian(double x, double y, double rho1, double z, double rho2);

struct RatioBounds {
  double lower;
  double upper;
};

/// Bounds on f_CN(x|y,rho,q)/f_N(x|q) valid for every x in S(q). The lower bound replaces
/// each w_k by its maximum over x in S(q), attained at an endpoint:
///   (1+rho^2 q^{2k})^2 + 2 sqrt(1-q)(1+rho^2 q^{2k})|y rho q^k| + (1-q) rho^2 y^2 q^{2k}.
/// The upper bound is (rho^2)_inf / (|rho|)_inf^4.
RatioBounds fcn_ratio_bounds(double y, double rho, const QParam<double>& q,
                             const TruncationPolicy& policy = {});

}  // namespace qaw
