#include "qaw/moments.hpp"

#include <cmath>

namespace qaw {

double c_n_gaussian(int n, double y, double z, double rho1, double rho2) {
  check_degree<double>(n, "c_n_gaussian");
  if (!(std::abs(rho1) < 1.0 && std::abs(rho2) < 1.0))
    throw DomainError("c_n_gaussian: |rho_i| must be < 1");
  const double r1 = rho1 * rho1;
  const double r2 = rho2 * rho2;
  const double den = 1.0 - r1 * r2;
  const double t2 = (r1 + r2 - 2.0 * r1 * r2) / den;
  if (t2 == 0.0) return n == 0 ? 1.0 : 0.0;
  const double t = std::sqrt(t2);
  const double mean = (rho1 * (1.0 - r2) * y + rho2 * (1.0 - r1) * z) / den;
  return std::pow(t, n) * hermite_H(n, mean / t, 1.0);
}

Vector<double> c_n_sequence(int N, const CondDensityParams<double>& p) {
  if (N < 0) throw DomainError("c_n_sequence: N must be nonnegative");
  p.validate();
  Vector<double> c(N);
  for (int i = 0; i < N; ++i) c(i) = c_n_main(i, p);
  return c;
}

double phi_expansion_partial(double x, const CondDensityParams<double>& p, const Vector<double>& c,
                             const TruncationPolicy& policy) {
  const QParam<double> q(p.q);
  const DensityEval base = f_N(x, q, policy);
  if (base.value == 0.0 || c.size() == 0) return 0.0;
  const int N = static_cast<int>(c.size());
  const Vector<double> h = hermite_H_sequence(N - 1, x, p.q);
  double sum = 0.0;
  double fact = 1.0;
  for (int i = 0; i < N; ++i) {
    if (i > 0) fact *= q_bracket(i, p.q);
    sum += h(i) * c(i) / fact;
  }
  return base.value * sum;
}

double phi_expansion_partial(double x, const CondDensityParams<double>& p, int N,
                             const TruncationPolicy& policy) {
  if (N < 1) throw DomainError("phi_expansion_partial: N must be >= 1");
  return phi_expansion_partial(x, p, c_n_sequence(N, p), policy);
}

double poisson_mehler_partial(double x, double y, double rho, const QParam<double>& q, int N,
                              const TruncationPolicy& policy) {
  if (N < 1) throw DomainError("poisson_mehler_partial: N must be >= 1");
  if (!(std::abs(rho) < 1.0)) throw DomainError("poisson_mehler_partial: |rho| must be < 1");
  const DensityEval base = f_N(x, q, policy);
  if (base.value == 0.0) return 0.0;
  return base.value * gamma_mk_partial(0, 0, x, y, rho, q.value(), N);
}

int series_length(double r, const QParam<double>& q, double rel_tol, int max_terms) {
  if (q.is_gaussian_branch()) throw DomainError("series_length: requires |q| < 1");
  if (!(r >= 0.0 && r < 1.0)) throw DomainError("series_length: r must lie in [0, 1)");
  const double qv = q.value();
  double ratio = 1.0;  // r^N (1-q)^{-N} / [N]_q!
  for (int N = 0; N <= max_terms; ++N) {
    if (N > 0) ratio *= r / ((1.0 - qv) * q_bracket(N, qv));
    const double s = s_n(N, qv);
    if (s * s * ratio < rel_tol) return N;
  }
  throw TruncationError("series_length: bound not reached within max_terms");
}

}  // namespace qaw
