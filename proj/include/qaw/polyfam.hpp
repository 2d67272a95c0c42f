#pragma once

// Polynomial families defined by three-term recurrences (q-Hermite h and H,
// Al-Salam--Chihara Q and P, the auxiliary B and b, Chebyshev U) and the
// identities that connect them.
//
// Every family starts from p_{-1} = 0, p_0 = 1, so H_1(x|q) = x. All functions are
// generic over the scalar field; the base is formal and may lie outside (-1, 1].

#include <algorithm>

#include "qaw/qcore.hpp"
#include "qaw/recurrence.hpp"
#include "qaw/scalar.hpp"

namespace qaw {

// ---------------------------------------------------------------------------
// Recurrence specifications

template <class T>
auto hermite_h_spec(const T& q) {
  return make_recurrence<T>(
      [q](int k) { return RecurrenceStep<T>{T(2), T(0), T(1) - ipow(q, k)}; });
}

/// Monic q-Hermite. At q = 1 the step is the ordinary H_{k+1} = x H_k - k H_{k-1}.
template <class T>
auto hermite_H_spec(const T& q) {
  const bool gaussian = (q == T(1));
  return make_recurrence<T>([q, gaussian](int k) {
    return RecurrenceStep<T>{T(1), T(0), gaussian ? T(k) : q_bracket(k, q)};
  });
}

template <class T>
auto asc_Q_spec(const T& a, const T& b, const T& q) {
  return make_recurrence<T>([a, b, q](int k) {
    const T qk = ipow(q, k);
    T gamma = k == 0 ? T(0) : (T(1) - a * b * ipow(q, k - 1)) * (T(1) - qk);
    return RecurrenceStep<T>{T(2), -(a + b) * qk, std::move(gamma)};
  });
}

template <class T>
auto asc_P_spec(const T& y, const T& rho, const T& q) {
  return make_recurrence<T>([y, rho, q](int k) {
    T gamma = k == 0 ? T(0) : (T(1) - rho * rho * ipow(q, k - 1)) * q_bracket(k, q);
    return RecurrenceStep<T>{T(1), -rho * y * ipow(q, k), std::move(gamma)};
  });
}

template <class T>
auto b_big_spec(const T& q) {
  return make_recurrence<T>([q](int k) {
    T gamma = k == 0 ? T(0) : -ipow(q, k - 1) * q_bracket(k, q);
    return RecurrenceStep<T>{-ipow(q, k), T(0), std::move(gamma)};
  });
}

template <class T>
auto b_small_spec(const T& q) {
  return make_recurrence<T>([q](int k) {
    T gamma = k == 0 ? T(0) : -ipow(q, k - 1) * (T(1) - ipow(q, k));
    return RecurrenceStep<T>{T(-2) * ipow(q, k), T(0), std::move(gamma)};
  });
}

template <class T>
auto chebyshev_U_spec() {
  return make_recurrence<T>([](int) { return RecurrenceStep<T>{T(2), T(0), T(1)}; });
}

// ---------------------------------------------------------------------------
// Point evaluation

/// Continuous q-Hermite h_n(x|q): leading coefficient 2^n.
template <class T>
T hermite_h(int n, const T& x, const T& q) {
  check_degree<T>(n, "hermite_h");
  return hermite_h_spec(q)(n, x);
}

/// Monic q-Hermite H_n(x|q) = (1-q)^{-n/2} h_n(x sqrt(1-q)/2 | q).
template <class T>
T hermite_H(int n, const T& x, const T& q) {
  check_degree<T>(n, "hermite_H");
  return hermite_H_spec(q)(n, x);
}

/// Al-Salam--Chihara Q_n(x|a,b,q).
template <class T>
T asc_Q(int n, const T& x, const T& a, const T& b, const T& q) {
  check_degree<T>(n, "asc_Q");
  return asc_Q_spec(a, b, q)(n, x);
}

/// Q_n for a real argument and a conjugate pair (a, b); the result is real.
inline double asc_Q(int n, double x, const Complex& a, const Complex& b, double q) {
  return real_checked(asc_Q<Complex>(n, Complex(x), a, b, Complex(q)), "asc_Q");
}

/// Rescaled Al-Salam--Chihara P_n(x|y,rho,q); monic in x.
template <class T>
T asc_P(int n, const T& x, const T& y, const T& rho, const T& q) {
  check_degree<T>(n, "asc_P");
  return asc_P_spec(y, rho, q)(n, x);
}

template <class T>
T b_big(int n, const T& y, const T& q) {
  check_degree<T>(n, "b_big");
  return b_big_spec(q)(n, y);
}

/// b_n(y|q) = (1-q)^{n/2} B_n(2y/sqrt(1-q) | q).
template <class T>
T b_small(int n, const T& y, const T& q) {
  check_degree<T>(n, "b_small");
  return b_small_spec(q)(n, y);
}

/// Chebyshev polynomial of the second kind.
template <class T>
T chebyshev_U(int n, const T& x) {
  check_degree<T>(n, "chebyshev_U");
  return chebyshev_U_spec<T>()(n, x);
}

/// H_0(x|q), ..., H_n(x|q). Not degree-capped: series truncations call this with their own
/// term counts.
template <class T>
Vector<T> hermite_H_sequence(int n, const T& x, const T& q) {
  if (n < 0) throw DomainError("hermite_H_sequence: n must be nonnegative");
  return hermite_H_spec(q).sequence(n, x);
}

template <class T>
Vector<T> asc_P_sequence(int n, const T& x, const T& y, const T& rho, const T& q) {
  if (n < 0) throw DomainError("asc_P_sequence: n must be nonnegative");
  return asc_P_spec(y, rho, q).sequence(n, x);
}

template <class T>
Vector<T> b_big_sequence(int n, const T& y, const T& q) {
  if (n < 0) throw DomainError("b_big_sequence: n must be nonnegative");
  return b_big_spec(q).sequence(n, y);
}

// ---------------------------------------------------------------------------
// Expansions in the H basis

/// Linearization H_n H_m = sum_j c_j H_{n+m-2j}, c_j = [m j][n j][j]!, j = 0..min(n,m).
template <class T>
Vector<T> linearize_HH(int n, int m, const T& q) {
  if (n < 0 || m < 0) throw DomainError("linearize_HH: degrees must be nonnegative");
  const int top = std::min(n, m);
  Vector<T> c(top + 1);
  for (int j = 0; j <= top; ++j)
    c(j) = q_binomial(m, j, q) * q_binomial(n, j, q) * q_factorial(j, q);
  return c;
}

/// B_n = sum_k c_k H_{n-2k}, k = 0..floor(n/2).
///
/// The factor q^{C(n,2)} q^{-k(n-k)} is applied as one nonnegative power so q = 0 is fine.
template <class T>
Vector<T> bh_expand_B(int n, const T& q) {
  if (n < 0) throw DomainError("bh_expand_B: degree must be nonnegative");
  Vector<T> c(n / 2 + 1);
  for (int k = 0; k <= n / 2; ++k)
    c(k) = sign_pow<T>(n) * q_binomial(n, k, q) * q_binomial(n - k, k, q) * q_factorial(k, q) *
           ipow(q, choose2(n) - k * (n - k));
  return c;
}

/// H_m B_n = sum_i c_i H_{n+m-2i}, i = 0..floor((n+m)/2). Terms with i > n vanish.
template <class T>
Vector<T> product_HB(int m, int n, const T& q) {
  if (n < 0 || m < 0) throw DomainError("product_HB: degrees must be nonnegative");
  const int top = (n + m) / 2;
  Vector<T> c(top + 1);
  for (int i = 0; i <= top; ++i) {
    if (i > n) {
      c(i) = T(0);
      continue;
    }
    c(i) = sign_pow<T>(n) * q_binomial(n, i, q) * q_binomial(n + m - i, i, q) *
           q_factorial(i, q) * ipow(q, choose2(n) - i * (n - i));
  }
  return c;
}

/// sum_k c_k H_{top-2k}(x|q).
template <class T>
T eval_in_H_basis(const Vector<T>& coeffs, int top, const T& x, const T& q) {
  const Vector<T> h = hermite_H_sequence(std::max(top, 0), x, q);
  T sum(0);
  for (Eigen::Index k = 0; k < coeffs.size(); ++k) {
    const int deg = top - 2 * static_cast<int>(k);
    if (deg < 0) break;
    sum += coeffs(k) * h(deg);
  }
  return sum;
}

// ---------------------------------------------------------------------------
// Connection sums

/// I_{n,m}(x|q) = sum_{i=0}^n [n i] B_{n-i}(x) H_{i+m}(x), evaluated directly.
template <class T>
T I_nm(int n, int m, const T& x, const T& q) {
  check_degree<T>(n + m, "I_nm");
  if (n < 0 || m < 0) throw DomainError("I_nm: indices must be nonnegative");
  const Vector<T> b = b_big_sequence(n, x, q);
  const Vector<T> h = hermite_H_sequence(n + m, x, q);
  T sum(0);
  for (int i = 0; i <= n; ++i) sum += q_binomial(n, i, q) * b(n - i) * h(i + m);
  return sum;
}

/// Closed form of I_{n,m}: 0 if n > m, else (-1)^n q^{C(n,2)} [m]!/[m-n]! H_{m-n}.
template <class T>
T I_nm_closed_form(int n, int m, const T& x, const T& q) {
  if (n < 0 || m < 0) throw DomainError("I_nm_closed_form: indices must be nonnegative");
  if (n > m) return T(0);
  return sign_pow<T>(n) * ipow(q, choose2(n)) * q_factorial(m, q) / q_factorial(m - n, q) *
         hermite_H(m - n, x, q);
}

/// sum_j [n j] rho^{n-j} B_{n-j}(y) H_j(x); equals P_n(x|y,rho,q).
template <class T>
T connection_P_from_BH(int n, const T& x, const T& y, const T& rho, const T& q) {
  check_degree<T>(n, "connection_P_from_BH");
  const Vector<T> b = b_big_sequence(n, y, q);
  const Vector<T> h = hermite_H_sequence(n, x, q);
  T sum(0);
  for (int j = 0; j <= n; ++j) sum += q_binomial(n, j, q) * ipow(rho, n - j) * b(n - j) * h(j);
  return sum;
}

/// sum_j [n j] rho^{n-j} H_{n-j}(y) P_j(x|y,rho,q); equals H_n(x|q).
template <class T>
T connection_H_from_P(int n, const T& x, const T& y, const T& rho, const T& q) {
  check_degree<T>(n, "connection_H_from_P");
  const Vector<T> hy = hermite_H_sequence(n, y, q);
  const Vector<T> p = asc_P_sequence(n, x, y, rho, q);
  T sum(0);
  for (int j = 0; j <= n; ++j) sum += q_binomial(n, j, q) * ipow(rho, n - j) * hy(n - j) * p(j);
  return sum;
}

/// sum_j [n j] B_{n-j}(x) H_j(x); zero for every n >= 1.
template <class T>
T connection_BH_sum(int n, const T& x, const T& q) {
  check_degree<T>(n, "connection_BH_sum");
  const Vector<T> b = b_big_sequence(n, x, q);
  const Vector<T> h = hermite_H_sequence(n, x, q);
  T sum(0);
  for (int j = 0; j <= n; ++j) sum += q_binomial(n, j, q) * b(n - j) * h(j);
  return sum;
}

}  // namespace qaw
