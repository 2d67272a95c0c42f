#include "qaw/densities.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace qaw {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_rho(double rho, const char* what) {
  if (!(std::abs(rho) < 1.0)) throw DomainError(std::string(what) + ": |rho| must be < 1");
}

void require_interior(const SupportInterval& s, double v, const char* what) {
  if (!s.interior(v))
    throw DomainError(std::string(what) + ": conditioning value must lie strictly inside S(q)");
}

/// w_0(x,y|r,q), the factor w_k written in terms of r = rho q^k.
double w0(double r, double x, double y, double one_minus_q) {
  const double r2 = r * r;
  return (1.0 - r2) * (1.0 - r2) - one_minus_q * r * (1.0 + r2) * x * y +
         one_minus_q * r2 * (x * x + y * y);
}

/// Per-factor deviation scale of prod (1 - rho^2 q^k) / w_k on S(q).
double fcn_scale(double rho) { return 20.0 * std::abs(rho) + rho * rho; }

}  // namespace

SupportInterval support(const QParam<double>& q) {
  if (q.is_gaussian_branch()) return {-INFINITY, INFINITY, true};
  const double h = 2.0 / std::sqrt(1.0 - q.value());
  return {-h, h, false};
}

double f_N_gaussian(double x) { return std::exp(-x * x / 2.0) / std::sqrt(kTwoPi); }

double f_CN_gaussian(double x, double y, double rho) {
  require_rho(rho, "f_CN");
  const double v = 1.0 - rho * rho;
  const double d = x - rho * y;
  return std::exp(-d * d / (2.0 * v)) / std::sqrt(kTwoPi * v);
}

double phi_gaussian(double x, double y, double rho1, double z, double rho2) {
  require_rho(rho1, "phi");
  require_rho(rho2, "phi");
  const double r1 = rho1 * rho1;
  const double r2 = rho2 * rho2;
  const double den = 1.0 - r1 * r2;
  const double mean = (y * rho1 * (1.0 - r2) + z * rho2 * (1.0 - r1)) / den;
  const double var = (1.0 - r1) * (1.0 - r2) / den;
  const double d = x - mean;
  return std::exp(-d * d / (2.0 * var)) / std::sqrt(kTwoPi * var);
}

DensityEval f_N(double x, const QParam<double>& q, const TruncationPolicy& policy) {
  if (q.is_gaussian_branch()) return {f_N_gaussian(x), 0};
  if (!support(q).interior(x)) return {0.0, 0};
  const double qv = q.value();
  const double u = (1.0 - qv) * x * x;
  const Truncated<double> euler = q_pochhammer_inf_eval(qv, q, policy);
  // Factor k >= 1 is 1 + q^k (2 - u) + q^{2k}, within 3|q|^k of 1.
  const int K = product_length(3.0, qv, policy, "f_N");
  double value = std::sqrt(1.0 - qv) * euler.value / kTwoPi * std::sqrt(std::max(0.0, 4.0 - u));
  double qk = 1.0;
  for (int k = 1; k < K; ++k) {
    qk *= qv;
    value *= 1.0 + qk * (2.0 - u) + qk * qk;
  }
  return {value, std::max(K, euler.terms)};
}

DensityEval f_CN(double x, double y, double rho, const QParam<double>& q,
                 const TruncationPolicy& policy) {
  require_rho(rho, "f_CN");
  if (q.is_gaussian_branch()) return {f_CN_gaussian(x, y, rho), 0};
  const SupportInterval s = support(q);
  require_interior(s, y, "f_CN");
  if (!s.interior(x)) return {0.0, 0};
  const double qv = q.value();
  const double omq = 1.0 - qv;
  const DensityEval base = f_N(x, q, policy);
  const int K = product_length(fcn_scale(rho), qv, policy, "f_CN");
  double value = base.value;
  double r = rho;
  for (int k = 0; k < K; ++k) {
    value *= (1.0 - rho * r) / w0(r, x, y, omq);
    r *= qv;
  }
  return {value, std::max(K, base.terms)};
}

DensityEval phi_cond(double x, const CondDensityParams<double>& p,
                     const TruncationPolicy& policy) {
  p.validate();
  const QParam<double> q(p.q);
  if (q.is_gaussian_branch()) return {phi_gaussian(x, p.y, p.rho1, p.z, p.rho2), 0};
  const SupportInterval s = support(q);
  require_interior(s, p.y, "phi");
  require_interior(s, p.z, "phi");
  if (!s.interior(x)) return {0.0, 0};
  const double omq = 1.0 - p.q;
  const double r12 = p.rho1 * p.rho2;
  const DensityEval base = f_N(x, q, policy);
  const double scale = fcn_scale(p.rho1) + fcn_scale(p.rho2) + fcn_scale(r12);
  const int K = product_length(scale, p.q, policy, "phi");
  double value = base.value;
  double a = p.rho1;
  double b = p.rho2;
  double c = r12;
  for (int k = 0; k < K; ++k) {
    value *= (1.0 - p.rho1 * a) * (1.0 - p.rho2 * b) / (1.0 - r12 * c) * w0(c, p.y, p.z, omq) /
             (w0(a, x, p.y, omq) * w0(b, x, p.z, omq));
    a *= p.q;
    b *= p.q;
    c *= p.q;
  }
  return {value, std::max(K, base.terms)};
}

double phi_cond_ratio(double x, const CondDensityParams<double>& p,
                      const TruncationPolicy& policy) {
  p.validate();
  const QParam<double> q(p.q);
  if (!support(q).interior(x)) return 0.0;
  const double den = f_CN(p.z, p.y, p.rho1 * p.rho2, q, policy).value;
  const double num =
      f_CN(p.z, x, p.rho2, q, policy).value * f_CN(x, p.y, p.rho1, q, policy).value;
  return checked_divide(num, den, "phi_cond_ratio");
}

double f_N_free(double x) {
  if (!(std::abs(x) < 2.0)) return 0.0;
  return std::sqrt(4.0 - x * x) / kTwoPi;
}

double f_CN_free(double x, double y, double rho) {
  require_rho(rho, "f_CN_free");
  if (!(std::abs(x) < 2.0)) return 0.0;
  return (1.0 - rho * rho) * std::sqrt(4.0 - x * x) / (kTwoPi * w0(rho, x, y, 1.0));
}

double phi_free(double x, double y, double rho1, double z, double rho2) {
  require_rho(rho1, "phi_free");
  require_rho(rho2, "phi_free");
  if (!(std::abs(x) < 2.0)) return 0.0;
  const double r1 = rho1 * rho1;
  const double r2 = rho2 * rho2;
  return (1.0 - r1) * (1.0 - r2) * w0(rho1 * rho2, y, z, 1.0) * std::sqrt(4.0 - x * x) /
         ((1.0 - r1 * r2) * w0(rho1, x, y, 1.0) * w0(rho2, x, z, 1.0) * kTwoPi);
}

RatioBounds fcn_ratio_bounds(double y, double rho, const QParam<double>& q,
                             const TruncationPolicy& policy) {
  if (q.is_gaussian_branch()) throw DomainError("fcn_ratio_bounds: requires |q| < 1");
  require_rho(rho, "fcn_ratio_bounds");
  if (!support(q).contains(y)) throw DomainError("fcn_ratio_bounds: y must lie in S(q)");
  if (rho == 0.0) return {1.0, 1.0};
  const double qv = q.value();
  const double r2 = rho * rho;
  const double sq = std::sqrt(1.0 - qv);
  const double yr = std::abs(y * rho);
  const double scale = 2.0 * r2 + r2 * r2 + 2.0 * sq * (1.0 + r2) * yr + (1.0 - qv) * r2 * y * y;
  const int K = product_length(scale, qv, policy, "fcn_ratio_bounds");
  double denom = 1.0;
  double qk = 1.0;
  for (int k = 0; k < K; ++k) {
    const double t = r2 * qk * qk;
    denom *= (1.0 + t) * (1.0 + t) + 2.0 * sq * (1.0 + t) * yr * std::abs(qk) + (1.0 - qv) * t * y * y;
    qk *= qv;
  }
  const double num = q_pochhammer_inf(r2, q, policy);
  const double p = q_pochhammer_inf(std::abs(rho), q, policy);
  return {num / denom, num / (p * p * p * p)};
}

}  // namespace qaw
