#include "qaw/awpoly.hpp"

#include <algorithm>
#include <cmath>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>

namespace qaw {

AWComplexParams map_params(const CondDensityParams<double>& p) {
  p.validate();
  if (p.q == 1.0) throw DomainError("map_params: q = 1 is not allowed");
  const double s = std::sqrt(1.0 - p.q) / 2.0;
  auto pair = [&](double y, double rho) {
    const double t = std::sqrt(std::max(0.0, 4.0 / (1.0 - p.q) - y * y));
    return Complex(s * rho * y, -s * rho * t);
  };
  const Complex a = pair(p.y, p.rho1);
  const Complex c = pair(p.z, p.rho2);
  return {a, std::conj(a), c, std::conj(c)};
}

double aw_D(int n, double x, const AWComplexParams& p, double q) {
  return real_checked(aw_D<Complex>(n, Complex(x), p.a, p.b, p.c, p.d, Complex(q)), "aw_D");
}

double aw_A_from_D(int n, double x, const CondDensityParams<double>& p) {
  const AWComplexParams ap = map_params(p);
  const double s = std::sqrt(1.0 - p.q);
  return aw_D(n, x * s / 2.0, ap, p.q) / std::pow(s, n);
}

Complex aw_phi43_oracle(int n, double x, const AWComplexParams& p, double q) {
  using boost::multiprecision::cpp_bin_float_50;
  using LC = boost::multiprecision::cpp_complex_50;
  if (n < 0) throw DomainError("aw_phi43_oracle: degree must be nonnegative");
  if (n == 0) return Complex(1.0);
  if (q == 0.0) throw DomainError("aw_phi43_oracle: q = 0 is not supported");
  if (p.a == Complex(0.0)) throw DomainError("aw_phi43_oracle: a must be nonzero");
  if (std::abs(x) > 1.0 + 1e-14) throw DomainError("aw_phi43_oracle: x must lie in [-1, 1]");
  const cpp_bin_float_50 theta = acos(cpp_bin_float_50(std::clamp(x, -1.0, 1.0)));
  const LC e(cos(theta), sin(theta));
  auto lift = [](const Complex& v) { return LC(v.real(), v.imag()); };
  const LC a = lift(p.a), b = lift(p.b), c = lift(p.c), d = lift(p.d);
  const LC ql(q);
  const LC abcd = a * b * c * d * ipow(ql, n - 1);
  const Vector<LC> num1 = q_pochhammer_sequence(LC(ipow(LC(1) / ql, n)), ql, n);
  const Vector<LC> num2 = q_pochhammer_sequence(abcd, ql, n);
  const Vector<LC> num3 = q_pochhammer_sequence(LC(a * e), ql, n);
  const Vector<LC> num4 = q_pochhammer_sequence(LC(a / e), ql, n);
  const Vector<LC> den1 = q_pochhammer_sequence(LC(a * b), ql, n);
  const Vector<LC> den2 = q_pochhammer_sequence(LC(a * c), ql, n);
  const Vector<LC> den3 = q_pochhammer_sequence(LC(a * d), ql, n);
  const Vector<LC> den4 = q_pochhammer_sequence(ql, ql, n);
  LC sum(0);
  LC qk(1);
  for (int k = 0; k <= n; ++k) {
    sum += checked_divide(LC(num1(k) * num2(k) * num3(k) * num4(k)),
                          LC(den1(k) * den2(k) * den3(k) * den4(k)), "aw_phi43_oracle") *
           qk;
    qk *= ql;
  }
  const LC pre = checked_divide(LC(den1(n) * den2(n) * den3(n)), LC(ipow(a, n) * num2(n)),
                                "aw_phi43_oracle");
  const LC v = pre * sum;
  return {static_cast<double>(v.real()), static_cast<double>(v.imag())};
}

double aw_D_free(int n, double x, const AWComplexParams& p) {
  return real_checked(aw_D_free<Complex>(n, Complex(x), p.a, p.b, p.c, p.d), "aw_D_free");
}

}  // namespace qaw
