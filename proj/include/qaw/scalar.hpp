#pragma once

#include <cmath>
#include <complex>
#include <string>
#include <type_traits>

#include <Eigen/Core>
#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/eigen.hpp>

#include "qaw/errors.hpp"

namespace qaw {

/// Exact rational field. Expression templates are off so `auto` and generic code behave.
using Rational = boost::multiprecision::number<boost::multiprecision::cpp_rational_backend,
                                               boost::multiprecision::et_off>;
using Complex = std::complex<double>;

/// Dense column of scalars; coefficient lists and recurrence sequences use this.
template <class T>
using Vector = Eigen::Matrix<T, Eigen::Dynamic, 1>;

template <class T>
using Matrix = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;

template <class T>
struct is_complex : std::false_type {};
template <class T>
struct is_complex<std::complex<T>> : std::true_type {};
template <class T>
inline constexpr bool is_complex_v = is_complex<T>::value;

template <class T>
inline constexpr bool is_exact_v = std::is_same_v<T, Rational>;

/// Largest degree the floating-point recurrences accept. Rational mode is uncapped.
inline constexpr int kMaxFloatDegree = 64;

template <class T>
void check_degree(int n, const char* what) {
  if (n < 0) throw DomainError(std::string(what) + ": degree must be nonnegative");
  if constexpr (!is_exact_v<T>) {
    if (n > kMaxFloatDegree)
      throw DomainError(std::string(what) + ": degree exceeds the floating-point cap of 64");
  }
}

/// base^e for e >= 0 by repeated squaring; 0^0 = 1.
template <class T>
T ipow(T base, int e) {
  T result(1);
  while (e > 0) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return result;
}

/// (-1)^k as a scalar.
template <class T>
T sign_pow(int k) {
  return (k % 2 == 0) ? T(1) : T(-1);
}

inline int choose2(int n) { return n * (n - 1) / 2; }

template <class T>
bool is_zero(const T& v) {
  return v == T(0);
}

/// Magnitude as a double, for stopping rules and error checks.
inline double magnitude(double v) { return std::abs(v); }
inline double magnitude(const Complex& v) { return std::abs(v); }
inline double magnitude(long double v) { return static_cast<double>(std::fabs(v)); }
inline double magnitude(const std::complex<long double>& v) {
  return static_cast<double>(std::abs(v));
}
inline double magnitude(const Rational& v) { return std::abs(static_cast<double>(v)); }

template <class T>
T checked_divide(const T& num, const T& den, const char* what) {
  if (is_zero(den)) throw PoleError(std::string(what) + ": vanishing denominator");
  return num / den;
}

/// Real part of a value that must be real; the imaginary residue may not exceed
/// 1e-12 * (1 + |value|).
inline double real_checked(const Complex& v, const char* what, double rel = 1e-12) {
  if (std::abs(v.imag()) > rel * (1.0 + std::abs(v)))
    throw RealnessError(std::string(what) + ": imaginary residue " + std::to_string(v.imag()) +
                        " exceeds tolerance");
  return v.real();
}

}  // namespace qaw
