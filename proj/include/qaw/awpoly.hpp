#pragma once

// Askey--Wilson polynomials. D_n(x|a,b,c,d,q) has leading coefficient 2^n; the monic
// A_n(x|y,rho1,z,rho2,q) = (1-q)^{-n/2} D_n(x sqrt(1-q)/2 | a,b,c,d,q) with (a,b,c,d)
// given by map_params.

#include <complex>

#include "qaw/polyfam.hpp"
#include "qaw/qcore.hpp"
#include "qaw/scalar.hpp"

namespace qaw {

struct AWComplexParams {
  Complex a;
  Complex b;
  Complex c;
  Complex d;
};

/// (y, rho1, z, rho2, q). validate() checks -1 < q <= 1, |rho_i| < 1 and y, z in S(q).
template <class R = double>
struct CondDensityParams {
  R y{0};
  R rho1{0};
  R z{0};
  R rho2{0};
  R q{0};

  void validate() const {
    QParam<R> check(q);
    if (!(rho1 * rho1 < R(1))) throw DomainError("rho1 must satisfy |rho1| < 1");
    if (!(rho2 * rho2 < R(1))) throw DomainError("rho2 must satisfy |rho2| < 1");
    if (!check.is_gaussian_branch()) {
      if ((R(1) - q) * y * y > R(4)) throw DomainError("y must lie in S(q)");
      if ((R(1) - q) * z * z > R(4)) throw DomainError("z must lie in S(q)");
    }
  }

  /// The same point with (y, rho1) and (z, rho2) exchanged.
  CondDensityParams swapped() const { return {z, rho2, y, rho1, q}; }
};

/// Conjugate-pair parameters; rejects q = 1.
AWComplexParams map_params(const CondDensityParams<double>& p);

namespace detail {

/// (rho1^2, rho2^2)_n / (rho1^2 rho2^2 q^{n-1})_n.
template <class T>
T aw_prefactor(int n, const T& r1sq, const T& r2sq, const T& q, const char* what) {
  if (n == 0) return T(1);
  return checked_divide(q_pochhammer(r1sq, q, n) * q_pochhammer(r2sq, q, n),
                        q_pochhammer(r1sq * r2sq * ipow(q, n - 1), q, n), what);
}

}  // namespace detail

/// D_n through Al-Salam--Chihara Q_n and the auxiliary b_n.
template <class T>
T aw_D(int n, const T& x, const T& a, const T& b, const T& c, const T& d, const T& q) {
  check_degree<T>(n, "aw_D");
  if (n == 0) return T(1);
  const T ab = a * b;
  const T cd = c * d;
  const T pre = detail::aw_prefactor(n, ab, cd, q, "aw_D");
  const Vector<T> qab = asc_Q_spec(a, b, q).sequence(n, x);
  const Vector<T> qcd = asc_Q_spec(c, d, q).sequence(n, x);
  const Vector<T> bs = b_small_spec(q).sequence(n, x);
  const Vector<T> pab = q_pochhammer_sequence(ab, q, n);
  const Vector<T> pcd = q_pochhammer_sequence(cd, q, n);
  T total(0);
  for (int j = 0; j <= n; ++j) {
    T inner(0);
    for (int i = 0; i <= j; ++i)
      inner += q_binomial(j, i, q) *
               checked_divide(T(qab(i) * qcd(j - i)), T(pab(i) * pcd(j - i)), "aw_D");
    total += q_binomial(n, j, q) * bs(n - j) * inner;
  }
  return pre * total;
}

/// D_n for real x and conjugate-pair parameters.
double aw_D(int n, double x, const AWComplexParams& p, double q);

/// A_n through the rescaled Al-Salam--Chihara P_n; symmetric in (y,rho1) <-> (z,rho2).
template <class T>
T aw_A_sym(int n, const T& x, const CondDensityParams<T>& p) {
  check_degree<T>(n, "aw_A_sym");
  const T r1sq = p.rho1 * p.rho1;
  const T r2sq = p.rho2 * p.rho2;
  const T pre = detail::aw_prefactor(n, r1sq, r2sq, p.q, "aw_A_sym");
  const Vector<T> py = asc_P_sequence(n, x, p.y, p.rho1, p.q);
  const Vector<T> pz = asc_P_sequence(n, x, p.z, p.rho2, p.q);
  const Vector<T> bb = b_big_sequence(n, x, p.q);
  const Vector<T> d1 = q_pochhammer_sequence(r1sq, p.q, n);
  const Vector<T> d2 = q_pochhammer_sequence(r2sq, p.q, n);
  T total(0);
  for (int j = 0; j <= n; ++j) {
    T inner(0);
    for (int i = 0; i <= j; ++i)
      inner += q_binomial(j, i, p.q) * py(i) * pz(j - i) / (d1(i) * d2(j - i));
    total += q_binomial(n, j, p.q) * bb(n - j) * inner;
  }
  return pre * total;
}

/// A_n as a single sum over P_{n-m}(x|z,rho2) P_m(y|x,rho1).
template <class T>
T aw_A_mixed(int n, const T& x, const CondDensityParams<T>& p) {
  check_degree<T>(n, "aw_A_mixed");
  const T r1sq = p.rho1 * p.rho1;
  const T r2sq = p.rho2 * p.rho2;
  const T pre = detail::aw_prefactor(n, r1sq, r2sq, p.q, "aw_A_mixed");
  const Vector<T> pxz = asc_P_sequence(n, x, p.z, p.rho2, p.q);
  const Vector<T> pyx = asc_P_sequence(n, p.y, x, p.rho1, p.q);
  const Vector<T> d1 = q_pochhammer_sequence(r1sq, p.q, n);
  const Vector<T> d2 = q_pochhammer_sequence(r2sq, p.q, n);
  T total(0);
  for (int m = 0; m <= n; ++m)
    total += sign_pow<T>(m) * ipow(p.q, choose2(m)) * q_binomial(n, m, p.q) * ipow(p.rho1, m) *
             pxz(n - m) * pyx(m) / (d2(n - m) * d1(m));
  return pre * total;
}

/// (1-q)^{-n/2} D_n(x sqrt(1-q)/2 | map_params(p), q).
double aw_A_from_D(int n, double x, const CondDensityParams<double>& p);

/// D_n from the terminating 4phi3 series, evaluated with 50 significant digits. Requires a != 0 and
/// q != 0; x is the unrescaled variable cos(theta).
Complex aw_phi43_oracle(int n, double x, const AWComplexParams& p, double q);

// ---------------------------------------------------------------------------
// q = 0 closed forms

namespace detail {

template <class T>
T chebyshev_U_or_zero(int n, const T& x) {
  return n < 0 ? T(0) : chebyshev_U(n, x);
}

/// (a;0)_i.
template <class T>
T pochhammer_q0(const T& a, int i) {
  return i == 0 ? T(1) : T(1) - a;
}

}  // namespace detail

/// D_1(x|a,b,c,d,0).
template <class T>
T aw_D1_free(const T& x, const T& a, const T& b, const T& c, const T& d) {
  return T(2) * x - checked_divide(T(a + b + c + d - a * b * c - b * c * d - a * c * d - a * b * d),
                                   T(T(1) - a * b * c * d), "aw_D1_free");
}

/// D_2(x|a,b,c,d,0).
template <class T>
T aw_D2_free(const T& x, const T& a, const T& b, const T& c, const T& d) {
  return T(4) * x * x - T(2) * (a + b + c + d) * x + a * b + a * c + a * d + b * c + b * d +
         c * d - T(1) - a * b * c * d;
}

/// D_n(x|a,b,c,d,0) = (1-ab)(1-cd)(S_n - 2x S_{n-1} + S_{n-2}) for n >= 2, with
/// S_j = sum_i Q_i(x|a,b,0) Q_{j-i}(x|c,d,0) / ((ab;0)_i (cd;0)_{j-i}) and
/// Q_i(x|a,b,0) = U_i(x) - (a+b) U_{i-1}(x) + ab U_{i-2}(x).
template <class T>
T aw_D_free(int n, const T& x, const T& a, const T& b, const T& c, const T& d) {
  check_degree<T>(n, "aw_D_free");
  if (n == 0) return T(1);
  if (n == 1) return aw_D1_free(x, a, b, c, d);
  using detail::chebyshev_U_or_zero;
  auto q0 = [&x](int i, const T& s, const T& p) {
    return chebyshev_U_or_zero(i, x) - s * chebyshev_U_or_zero(i - 1, x) +
           p * chebyshev_U_or_zero(i - 2, x);
  };
  const T ab = a * b;
  const T cd = c * d;
  auto S = [&](int j) {
    T sum(0);
    for (int i = 0; i <= j; ++i)
      sum += q0(i, a + b, ab) * q0(j - i, c + d, cd) /
             (detail::pochhammer_q0(ab, i) * detail::pochhammer_q0(cd, j - i));
    return sum;
  };
  return (T(1) - ab) * (T(1) - cd) * (S(n) - T(2) * x * S(n - 1) + S(n - 2));
}

double aw_D_free(int n, double x, const AWComplexParams& p);

/// A_1(x|y,rho1,z,rho2,0).
template <class T>
T aw_A1_free(const T& x, const CondDensityParams<T>& p) {
  const T r1sq = p.rho1 * p.rho1;
  const T r2sq = p.rho2 * p.rho2;
  return x - (p.y * p.rho1 * (T(1) - r2sq) + p.z * p.rho2 * (T(1) - r1sq)) / (T(1) - r1sq * r2sq);
}

/// A_n(x|y,rho1,z,rho2,0) = (1-rho1^2)(1-rho2^2)(T_n - x T_{n-1} + T_{n-2}) for n >= 2, with
/// T_j = sum_i P_i(x|y,rho1,0) P_{j-i}(x|z,rho2,0) / ((rho1^2;0)_i (rho2^2;0)_{j-i}) and
/// P_i(x|y,rho,0) = U_i(x/2) - rho y U_{i-1}(x/2) + rho^2 U_{i-2}(x/2). p.q is ignored.
template <class T>
T aw_A_free(int n, const T& x, const CondDensityParams<T>& p) {
  check_degree<T>(n, "aw_A_free");
  if (n == 0) return T(1);
  if (n == 1) return aw_A1_free(x, p);
  using detail::chebyshev_U_or_zero;
  const T half = x / T(2);
  auto p0 = [&half](int i, const T& y, const T& rho) {
    return chebyshev_U_or_zero(i, half) - rho * y * chebyshev_U_or_zero(i - 1, half) +
           rho * rho * chebyshev_U_or_zero(i - 2, half);
  };
  const T r1sq = p.rho1 * p.rho1;
  const T r2sq = p.rho2 * p.rho2;
  auto Tj = [&](int j) {
    T sum(0);
    for (int i = 0; i <= j; ++i)
      sum += p0(i, p.y, p.rho1) * p0(j - i, p.z, p.rho2) /
             (detail::pochhammer_q0(r1sq, i) * detail::pochhammer_q0(r2sq, j - i));
    return sum;
  };
  return (T(1) - r1sq) * (T(1) - r2sq) * (Tj(n) - x * Tj(n - 1) + Tj(n - 2));
}

}  // namespace qaw
