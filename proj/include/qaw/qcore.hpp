#pragma once

// q-arithmetic primitives: brackets, factorials, binomials, Pochhammer symbols.
//
// The finite operations are formal: they take the base as a plain scalar and are
// valid over any field (double, Complex, Rational), including bases outside
// (-1, 1]. QParam is the validated base used wherever a density or an infinite
// product needs -1 < q <= 1.

#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "qaw/errors.hpp"
#include "qaw/scalar.hpp"

namespace qaw {

/// The base q, restricted to -1 < q <= 1.
template <class R>
class QParam {
 public:
  QParam(R q) : q_(std::move(q)) {  // NOLINT: implicit from a scalar is intentional
    if (!(q_ > R(-1) && q_ <= R(1)))
      throw DomainError("q must satisfy -1 < q <= 1");
  }

  const R& value() const { return q_; }
  operator const R&() const { return q_; }  // NOLINT

  /// q = 1 exactly: the Gaussian (classical Hermite) branch.
  bool is_gaussian_branch() const { return q_ == R(1); }

 private:
  R q_;
};

struct TruncationPolicy {
  double rel_tol = 1e-14;
  int max_terms = 10000;

  void validate() const {
    if (!(rel_tol > 0.0)) throw DomainError("truncation policy: rel_tol must be positive");
    if (max_terms < 1) throw DomainError("truncation policy: max_terms must be >= 1");
  }
};

/// A truncated infinite product or series together with the number of terms used.
template <class T>
struct Truncated {
  T value;
  int terms;
};

/// Infinite-product bases beyond this magnitude are rejected in floating mode.
inline constexpr double kMaxProductBase = 0.99;

/// [n]_q = 1 + q + ... + q^{n-1}; [0]_q = 0.
template <class T>
T q_bracket(int n, const T& q) {
  if (n < 0) throw DomainError("q_bracket: n must be nonnegative");
  T sum(0);
  T power(1);
  for (int i = 0; i < n; ++i) {
    sum += power;
    power *= q;
  }
  return sum;
}

/// [n]_q! = prod_{i=1}^n [i]_q.
template <class T>
T q_factorial(int n, const T& q) {
  if (n < 0) throw DomainError("q_factorial: n must be nonnegative");
  T result(1);
  T bracket(0);
  T power(1);
  for (int i = 1; i <= n; ++i) {
    bracket += power;
    power *= q;
    result *= bracket;
  }
  return result;
}

/// Gaussian binomial; exactly 0 unless n >= k >= 0.
template <class T>
T q_binomial(int n, int k, const T& q) {
  if (k < 0 || n < k) return T(0);
  if (k > n - k) k = n - k;
  T result(1);
  for (int i = 1; i <= k; ++i) result *= q_bracket(n - k + i, q) / q_bracket(i, q);
  return result;
}

/// (a;q)_n = prod_{i=0}^{n-1} (1 - a q^i).
template <class T>
T q_pochhammer(const T& a, const T& q, int n) {
  if (n < 0) throw DomainError("q_pochhammer: n must be nonnegative");
  T result(1);
  T term = a;
  for (int i = 0; i < n; ++i) {
    result *= T(1) - term;
    term *= q;
  }
  return result;
}

/// (a;q)_0, ..., (a;q)_n.
template <class T>
Vector<T> q_pochhammer_sequence(const T& a, const T& q, int n) {
  if (n < 0) throw DomainError("q_pochhammer: n must be nonnegative");
  Vector<T> out(n + 1);
  out(0) = T(1);
  T term = a;
  for (int i = 0; i < n; ++i) {
    out(i + 1) = out(i) * (T(1) - term);
    term *= q;
  }
  return out;
}

/// Number of factors K needed so that scale * |q|^K < rel_tol * (1 - |q|), which bounds the
/// log of the neglected tail of a product whose k-th factor differs from 1 by at most
/// scale * |q|^k.
inline int product_length(double scale, double q, const TruncationPolicy& policy,
                          const char* what) {
  policy.validate();
  const double aq = std::abs(q);
  if (aq >= 1.0) throw DomainError(std::string(what) + ": infinite product needs |q| < 1");
  if (aq > kMaxProductBase)
    throw DomainError(std::string(what) + ": |q| > 0.99 is not supported for infinite products");
  const double bound = policy.rel_tol * (1.0 - aq);
  double t = std::abs(scale);
  int k = 0;
  while (!(t < bound)) {
    if (k >= policy.max_terms)
      throw TruncationError(std::string(what) + ": max_terms reached before the tail bound");
    t *= aq;
    ++k;
  }
  return k;
}

/// (a;q)_inf truncated at the first k with |a| |q|^k < rel_tol (1 - |q|).
template <class T>
Truncated<T> q_pochhammer_inf_eval(const T& a, const QParam<double>& q,
                                   const TruncationPolicy& policy = {}) {
  if (q.is_gaussian_branch()) throw DomainError("q_pochhammer_inf: q = 1 is not allowed");
  const int terms = product_length(magnitude(a), q.value(), policy, "q_pochhammer_inf");
  T result(1);
  T term = a;
  for (int k = 0; k < terms; ++k) {
    result *= T(1) - term;
    term *= q.value();
  }
  return {result, terms};
}

template <class T>
T q_pochhammer_inf(const T& a, const QParam<double>& q, const TruncationPolicy& policy = {}) {
  return q_pochhammer_inf_eval(a, q, policy).value;
}

/// (a_1, ..., a_k; q)_n.
template <class T>
T multi_pochhammer(std::span<const T> as, const T& q, int n) {
  if (as.empty()) throw DomainError("multi_pochhammer: parameter list is empty");
  T result(1);
  for (const T& a : as) result *= q_pochhammer(a, q, n);
  return result;
}

template <class T>
T multi_pochhammer(std::initializer_list<T> as, const T& q, int n) {
  return multi_pochhammer(std::span<const T>(as.begin(), as.size()), q, n);
}

/// (a_1, ..., a_k; q)_inf.
template <class T>
T multi_pochhammer_inf(std::span<const T> as, const QParam<double>& q,
                       const TruncationPolicy& policy = {}) {
  if (as.empty()) throw DomainError("multi_pochhammer: parameter list is empty");
  T result(1);
  for (const T& a : as) result *= q_pochhammer_inf(a, q, policy);
  return result;
}

template <class T>
T multi_pochhammer_inf(std::initializer_list<T> as, const QParam<double>& q,
                       const TruncationPolicy& policy = {}) {
  return multi_pochhammer_inf(std::span<const T>(as.begin(), as.size()), q, policy);
}

/// s_n(q) = sum_{i=0}^n [n i]_q.
template <class T>
T s_n(int n, const T& q) {
  if (n < 0) throw DomainError("s_n: n must be nonnegative");
  T sum(0);
  for (int i = 0; i <= n; ++i) sum += q_binomial(n, i, q);
  return sum;
}

}  // namespace qaw
