#pragma once

// Conditional q-Hermite moments C_n(y,z|rho1,rho2,q) = E(H_n(X|q) | Y=y, Z=z) under phi,
// the expansion of phi in the H basis, and the kernel sums used to derive them.

#include <cmath>

#include "qaw/awpoly.hpp"
#include "qaw/densities.hpp"
#include "qaw/polyfam.hpp"
#include "qaw/qcore.hpp"

namespace qaw {

/// C_n as a double sum over H_j(z) H_{n-2k-j}(y). Requires q != 1.
template <class T>
T c_n_main(int n, const CondDensityParams<T>& p) {
  check_degree<T>(n, "c_n_main");
  const T& q = p.q;
  if (q == T(1)) throw DomainError("c_n_main: q = 1 is handled by c_n_gaussian");
  const T r1sq = p.rho1 * p.rho1;
  const T r2sq = p.rho2 * p.rho2;
  const Vector<T> hy = hermite_H_sequence(n, p.y, q);
  const Vector<T> hz = hermite_H_sequence(n, p.z, q);
  T total(0);
  for (int k = 0; k <= n / 2; ++k) {
    const int r = n - 2 * k;
    const T qk = ipow(q, k);
    const Vector<T> pa = q_pochhammer_sequence(T(r1sq * qk), q, r);
    const Vector<T> pb = q_pochhammer_sequence(T(r2sq * qk), q, r);
    T inner(0);
    for (int j = 0; j <= r; ++j)
      inner += q_binomial(r, j, q) * pa(j) * pb(r - j) * ipow(p.rho1, r - j) * ipow(p.rho2, j) *
               hz(j) * hy(r - j);
    total += sign_pow<T>(k) * ipow(q, choose2(k)) * q_binomial(n, 2 * k, q) *
             q_binomial(2 * k, k, q) * q_factorial(k, q) * ipow(T(r1sq * r2sq), k) *
             q_pochhammer(r1sq, q, k) * q_pochhammer(r2sq, q, k) * inner;
  }
  return checked_divide(total, q_pochhammer(T(r1sq * r2sq), q, n), "c_n_main");
}

/// C_n as a single sum over H_{n-s}(y) P_s(z|y,rho1 rho2,q). Requires q != 1.
template <class T>
T c_n_via_P(int n, const CondDensityParams<T>& p) {
  check_degree<T>(n, "c_n_via_P");
  const T& q = p.q;
  if (q == T(1)) throw DomainError("c_n_via_P: q = 1 is handled by c_n_gaussian");
  const T r1sq = p.rho1 * p.rho1;
  const T r12 = p.rho1 * p.rho2;
  const Vector<T> hy = hermite_H_sequence(n, p.y, q);
  const Vector<T> pz = asc_P_sequence(n, p.z, p.y, r12, q);
  const Vector<T> num = q_pochhammer_sequence(r1sq, q, n);
  const Vector<T> den = q_pochhammer_sequence(T(r12 * r12), q, n);
  T total(0);
  for (int s = 0; s <= n; ++s)
    total += q_binomial(n, s, q) * ipow(p.rho1, n - s) * ipow(p.rho2, s) * hy(n - s) *
             checked_divide(T(num(s) * pz(s)), den(s), "c_n_via_P");
  return total;
}

/// C_n at q = 1: t^n H_n(m/t) with t^2 the variance reduction and m the conditional mean.
/// At rho1 = rho2 = 0 the limit is 1 for n = 0 and 0 otherwise.
double c_n_gaussian(int n, double y, double z, double rho1, double rho2);

/// Coefficient of H_j(y|q) H_m(z|q) in C_n. Zero unless n - j - m = 2k >= 0, otherwise
///   [n]!/([k]![j]![m]!) (-1)^k q^{C(k,2)} rho1^{n-m} rho2^{n-j}
///     (rho1^2)_{k+m} (rho2^2)_{n-m-k} / (rho1^2 rho2^2)_n.
template <class T>
T alpha_coeff(int n, int j, int m, const T& rho1, const T& rho2, const T& q) {
  if (n < 0 || j < 0 || m < 0) throw DomainError("alpha_coeff: indices must be nonnegative");
  const int rest = n - j - m;
  if (rest < 0 || rest % 2 != 0) return T(0);
  const int k = rest / 2;
  const T r1sq = rho1 * rho1;
  const T r2sq = rho2 * rho2;
  const T num = q_factorial(n, q) * sign_pow<T>(k) * ipow(q, choose2(k)) * ipow(rho1, n - m) *
                ipow(rho2, n - j) * q_pochhammer(r1sq, q, k + m) *
                q_pochhammer(r2sq, q, n - m - k);
  const T den = q_factorial(k, q) * q_factorial(j, q) * q_factorial(m, q) *
                q_pochhammer(T(r1sq * r2sq), q, n);
  return checked_divide(num, den, "alpha_coeff");
}

/// alpha_{n,j,m} for j, m = 0..n, rows indexed by j.
template <class T>
Matrix<T> alpha_matrix(int n, const T& rho1, const T& rho2, const T& q) {
  if (n < 0) throw DomainError("alpha_matrix: n must be nonnegative");
  Matrix<T> a(n + 1, n + 1);
  for (int j = 0; j <= n; ++j)
    for (int m = 0; m <= n; ++m) a(j, m) = alpha_coeff(n, j, m, rho1, rho2, q);
  return a;
}

/// sum_{j,m} alpha_{n,j,m} H_j(y|q) H_m(z|q).
template <class T>
T c_n_from_alpha(int n, const CondDensityParams<T>& p) {
  check_degree<T>(n, "c_n_from_alpha");
  const Matrix<T> a = alpha_matrix(n, p.rho1, p.rho2, p.q);
  const Vector<T> hy = hermite_H_sequence(n, p.y, p.q);
  const Vector<T> hz = hermite_H_sequence(n, p.z, p.q);
  return hy.dot(a.lazyProduct(hz));
}

/// sum_{i=0}^{N-1} rho^i / [i]_q! H_{i+m}(x|q) H_{i+k}(y|q).
template <class T>
T gamma_mk_partial(int m, int k, const T& x, const T& y, const T& rho, const T& q, int N) {
  if (m < 0 || k < 0 || N < 0) throw DomainError("gamma_mk_partial: indices must be nonnegative");
  if (N == 0) return T(0);
  const Vector<T> hx = hermite_H_sequence(N - 1 + m, x, q);
  const Vector<T> hy = hermite_H_sequence(N - 1 + k, y, q);
  T sum(0);
  T weight(1);
  for (int i = 0; i < N; ++i) {
    if (i > 0) weight = weight * rho / q_bracket(i, q);
    sum += weight * hx(i + m) * hy(i + k);
  }
  return sum;
}

/// sum_{s=0}^k (-1)^s q^{C(s,2)} [k s]_q rho^s H_{k-s}(y|q) P_{m+s}(x|y,rho,q) / (rho^2)_{m+s},
/// which equals gamma_{m,k} / gamma_{0,0}.
template <class T>
T carlitz_finite_sum(int m, int k, const T& x, const T& y, const T& rho, const T& q) {
  if (m < 0 || k < 0) throw DomainError("carlitz_finite_sum: indices must be nonnegative");
  const Vector<T> hy = hermite_H_sequence(k, y, q);
  const Vector<T> px = asc_P_sequence(m + k, x, y, rho, q);
  const Vector<T> den = q_pochhammer_sequence(T(rho * rho), q, m + k);
  T sum(0);
  for (int s = 0; s <= k; ++s)
    sum += sign_pow<T>(s) * ipow(q, choose2(s)) * q_binomial(k, s, q) * ipow(rho, s) *
           hy(k - s) * checked_divide(px(m + s), den(m + s), "carlitz_finite_sum");
  return sum;
}

/// P_m(y|x,rho,q)/(rho^2)_m minus its expansion in H_{m-s}(y|q) P_s(x|y,rho,q).
template <class T>
T alsalam_identity_residual(int m, const T& x, const T& y, const T& rho, const T& q) {
  check_degree<T>(m, "alsalam_identity_residual");
  const Vector<T> den = q_pochhammer_sequence(T(rho * rho), q, m);
  const T lhs = checked_divide(asc_P(m, y, x, rho, q), den(m), "alsalam_identity_residual");
  const Vector<T> hy = hermite_H_sequence(m, y, q);
  const Vector<T> px = asc_P_sequence(m, x, y, rho, q);
  T rhs(0);
  for (int s = 0; s <= m; ++s)
    rhs += sign_pow<T>(s) * q_binomial(m, s, q) * ipow(q, choose2(s)) * ipow(rho, s) *
           hy(m - s) * px(s) / den(s);
  return lhs - rhs;
}

/// C_0, ..., C_{N-1} from c_n_main.
Vector<double> c_n_sequence(int N, const CondDensityParams<double>& p);

/// f_N(x|q) sum_{i<N} H_i(x|q) C_i / [i]_q! with C_i taken from `c`.
double phi_expansion_partial(double x, const CondDensityParams<double>& p, const Vector<double>& c,
                             const TruncationPolicy& policy = {});

double phi_expansion_partial(double x, const CondDensityParams<double>& p, int N,
                             const TruncationPolicy& policy = {});

/// f_N(x|q) sum_{n<N} rho^n / [n]_q! H_n(x|q) H_n(y|q).
double poisson_mehler_partial(double x, double y, double rho, const QParam<double>& q, int N,
                              const TruncationPolicy& policy = {});

/// Smallest N with s_N(q)^2 (1-q)^{-N} r^N / [N]_q! < rel_tol, the a priori bound on the N-th
/// term of both expansions when |rho_i| <= r.
int series_length(double r, const QParam<double>& q, double rel_tol, int max_terms = 10000);

}  // namespace qaw
