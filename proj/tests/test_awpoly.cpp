#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "qaw/awpoly.hpp"
#include "support.hpp"

using namespace qaw;
using qaw::test::rel_err;
using qaw::test::Rng;

namespace {

template <class F>
Rational leading_coefficient(int n, F&& p) {
  Rational diff = 0;
  Rational binom = 1;
  for (int i = 0; i <= n; ++i) {
    if (i > 0) binom = binom * (n - i + 1) / i;
    diff += sign_pow<Rational>(n - i) * binom * p(Rational(i));
  }
  Rational fact = 1;
  for (int i = 2; i <= n; ++i) fact *= i;
  return diff / fact;
}

CondDensityParams<double> random_point(Rng& rng) {
  const double q = rng.uniform(0.3, 0.8) * (rng.uniform() < 0.5 ? -1 : 1);
  const double L = 2 / std::sqrt(1 - q);
  auto rho = [&rng] { return rng.uniform(0.1, 0.8) * (rng.uniform() < 0.5 ? -1 : 1); };
  return {rng.uniform(-0.9, 0.9) * L, rho(), rng.uniform(-0.9, 0.9) * L, rho(), q};
}

}  // namespace

TEST(CondDensityParams, Validation) {
  EXPECT_NO_THROW((CondDensityParams<double>{0.1, 0.5, -0.2, 0.3, 0.5}.validate()));
  EXPECT_THROW((CondDensityParams<double>{0.1, 1.0, -0.2, 0.3, 0.5}.validate()), DomainError);
  EXPECT_THROW((CondDensityParams<double>{0.1, 0.5, -0.2, -1.2, 0.5}.validate()), DomainError);
  EXPECT_THROW((CondDensityParams<double>{3.0, 0.5, -0.2, 0.3, 0.5}.validate()), DomainError);
  EXPECT_THROW((CondDensityParams<double>{0.1, 0.5, -0.2, 0.3, -1.0}.validate()), DomainError);
  EXPECT_NO_THROW((CondDensityParams<double>{30.0, 0.5, -20.0, 0.3, 1.0}.validate()));
  EXPECT_NO_THROW((CondDensityParams<Rational>{Rational(1, 2), Rational(1, 3), 0, 0, Rational(1, 2)}
                       .validate()));
}

TEST(MapParams, Examples) {
  const AWComplexParams z = map_params({0.4, 0.0, -0.3, 0.5, 0.2});
  EXPECT_EQ(z.a, Complex(0.0));
  EXPECT_EQ(z.b, Complex(0.0));
  const AWComplexParams p = map_params({0.0, 0.5, 0.0, 0.0, 0.0});
  EXPECT_NEAR(std::abs(p.a - Complex(0, -0.5)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(p.b - Complex(0, 0.5)), 0.0, 1e-15);
  EXPECT_THROW(map_params({0.0, 0.5, 0.0, 0.0, 1.0}), DomainError);
}

TEST(MapParams, ModulusAndProduct) {
  Rng rng(5);
  for (int i = 0; i < 50; ++i) {
    const CondDensityParams<double> p = random_point(rng);
    const AWComplexParams a = map_params(p);
    EXPECT_NEAR(std::abs(a.a), std::abs(p.rho1), 1e-14);
    EXPECT_NEAR(std::abs(a.c), std::abs(p.rho2), 1e-14);
    EXPECT_EQ(a.b, std::conj(a.a));
    EXPECT_NEAR(std::abs(a.a * a.b - p.rho1 * p.rho1), 0.0, 1e-15);
  }
}

TEST(AwD, DegreeZero) {
  EXPECT_EQ(aw_D(0, 0.3, AWComplexParams{0.1, 0.1, 0.2, 0.2}, 0.5), 1.0);
}

TEST(AwD, FreeClosedFormsExact) {
  const Rational a(1, 3), b(-1, 4), c(2, 5), d(1, 7);
  for (const Rational x : {Rational(3, 10), Rational(-6, 5)}) {
    EXPECT_EQ(aw_D(1, x, a, b, c, d, Rational(0)), aw_D1_free(x, a, b, c, d));
    EXPECT_EQ(aw_D(2, x, a, b, c, d, Rational(0)), aw_D2_free(x, a, b, c, d));
    for (int n = 0; n <= 8; ++n) EXPECT_EQ(aw_D(n, x, a, b, c, d, Rational(0)), aw_D_free(n, x, a, b, c, d));
  }
}

TEST(AwD, FreeClosedFormsConjugatePairs) {
  const AWComplexParams p = map_params({0.6, 0.5, -1.1, -0.4, 0.0});
  for (double x : {-0.8, 0.1, 0.9}) {
    EXPECT_NEAR(aw_D(1, x, p, 0.0), aw_D1_free<Complex>(x, p.a, p.b, p.c, p.d).real(), 1e-12);
    EXPECT_NEAR(aw_D(2, x, p, 0.0), aw_D2_free<Complex>(x, p.a, p.b, p.c, p.d).real(), 1e-12);
    for (int n = 0; n <= 6; ++n) EXPECT_NEAR(aw_D(n, x, p, 0.0), aw_D_free(n, x, p), 1e-12);
  }
}

TEST(AwD, LeadingCoefficient) {
  const Rational a(1, 3), b(-1, 4), c(2, 5), d(1, 7), q(1, 2);
  for (int n = 0; n <= 8; ++n)
    EXPECT_EQ(leading_coefficient(n, [&](const Rational& x) { return aw_D(n, x, a, b, c, d, q); }),
              ipow(Rational(2), n));
}

TEST(AwD, PoleIsReported) {
  const Rational one(1);
  EXPECT_THROW(aw_D(1, Rational(0), one, one, one, one, Rational(1, 2)), PoleError);
  EXPECT_THROW(aw_D(2, Rational(0), Rational(2), Rational(1), Rational(1, 2), Rational(2), Rational(1, 2)),
               PoleError);
}

TEST(AwD, RealForConjugatePairs) {
  Rng rng(8);
  for (int i = 0; i < 20; ++i) {
    const CondDensityParams<double> p = random_point(rng);
    const AWComplexParams a = map_params(p);
    for (int n = 0; n <= 8; ++n) {
      const Complex v = aw_D<Complex>(n, Complex(0.3), a.a, a.b, a.c, a.d, Complex(p.q));
      EXPECT_LT(std::abs(v.imag()), 1e-12 * (1 + std::abs(v)));
    }
  }
}

TEST(AwA, DegreeZeroAndOne) {
  const CondDensityParams<double> p{0.4, 0.5, -0.3, 0.6, 0.2};
  EXPECT_EQ(aw_A_sym(0, 0.7, p), 1.0);
  EXPECT_EQ(aw_A_mixed(0, 0.7, p), 1.0);
  const CondDensityParams<double> p0{0.4, 0.5, -0.3, 0.6, 0.0};
  EXPECT_NEAR(aw_A_sym(1, 0.7, p0), aw_A1_free(0.7, p0), 1e-15);
}

TEST(AwA, ReducesToAscWhenRho1Vanishes) {
  for (double q : {-0.4, 0.0, 0.6})
    for (int n = 0; n <= 8; ++n) {
      const CondDensityParams<double> p{0.4, 0.0, -0.3, 0.6, q};
      EXPECT_NEAR(aw_A_sym(n, 0.7, p), asc_P(n, 0.7, -0.3, 0.6, q), 1e-12);
    }
}

TEST(AwA, RepresentationsAgreeExactly) {
  Rng rng(31);
  for (int trial = 0; trial < 4; ++trial) {
    const CondDensityParams<Rational> p{rng.rational(2.0), rng.rational(), rng.rational(2.0),
                                        rng.rational(), rng.rational()};
    const Rational x = rng.rational(2.0);
    for (int n = 0; n <= 8; ++n) {
      const Rational sym = aw_A_sym(n, x, p);
      EXPECT_EQ(sym, aw_A_mixed(n, x, p)) << n;
      EXPECT_EQ(sym, aw_A_sym(n, x, p.swapped()));
      EXPECT_EQ(aw_A_mixed(n, x, p), aw_A_mixed(n, x, p.swapped()));
    }
  }
}

TEST(AwA, MixedMatchesSymmetricAtReferencePoint) {
  const CondDensityParams<double> p{-0.5, 0.4, 0.7, 0.6, 0.5};
  for (int n = 1; n <= 6; ++n) EXPECT_LT(rel_err(aw_A_mixed(n, 0.3, p), aw_A_sym(n, 0.3, p)), 1e-12);
}

TEST(AwA, Monic) {
  const CondDensityParams<Rational> p{Rational(1, 2), Rational(2, 5), Rational(-3, 4), Rational(3, 5),
                                      Rational(3, 10)};
  for (int n = 0; n <= 8; ++n)
    EXPECT_EQ(leading_coefficient(n, [&](const Rational& x) { return aw_A_sym(n, x, p); }), Rational(1));
}

TEST(AwA, FreeClosedFormExact) {
  const CondDensityParams<Rational> p{Rational(1, 2), Rational(2, 5), Rational(-3, 5), Rational(3, 5), 0};
  for (const Rational x : {Rational(3, 10), Rational(-7, 4)})
    for (int n = 0; n <= 8; ++n) EXPECT_EQ(aw_A_sym(n, x, p), aw_A_free(n, x, p)) << n;
}

TEST(AwA, RescaledDMatches) {
  Rng rng(17);
  for (int i = 0; i < 20; ++i) {
    const CondDensityParams<double> p = random_point(rng);
    const double x = rng.uniform(-0.9, 0.9) * 2 / std::sqrt(1 - p.q);
    for (int n = 0; n <= 8; ++n) EXPECT_LT(rel_err(aw_A_from_D(n, x, p), aw_A_sym(n, x, p)), 1e-10);
  }
}

TEST(Phi43Oracle, Examples) {
  const AWComplexParams p = map_params({0.6, 0.5, -1.1, -0.4, 0.5});
  EXPECT_EQ(aw_phi43_oracle(0, 0.2, p, 0.5), Complex(1.0));
  const double x = std::cos(std::numbers::pi / 3);
  for (int n = 1; n <= 2; ++n) {
    const Complex o = aw_phi43_oracle(n, x, p, 0.5);
    EXPECT_LT(rel_err(o.real(), aw_D(n, x, p, 0.5)), 1e-10);
    EXPECT_LT(std::abs(o.imag()), 1e-12);
  }
}

TEST(Phi43Oracle, AgreesWithQHermiteRepresentation) {
  Rng rng(23);
  for (int i = 0; i < 20; ++i) {
    const CondDensityParams<double> p = random_point(rng);
    const AWComplexParams a = map_params(p);
    const double x = rng.uniform(-0.95, 0.95);
    for (int n = 0; n <= 6; ++n) EXPECT_LT(rel_err(aw_phi43_oracle(n, x, a, p.q).real(), aw_D(n, x, a, p.q)), 1e-10);
  }
}

TEST(Phi43Oracle, Preconditions) {
  const AWComplexParams p = map_params({0.6, 0.5, -1.1, -0.4, 0.5});
  EXPECT_THROW(aw_phi43_oracle(2, 0.2, p, 0.0), DomainError);
  EXPECT_THROW(aw_phi43_oracle(2, 1.1, p, 0.5), DomainError);
  EXPECT_NO_THROW(aw_phi43_oracle(2, 1.0 + 1e-15, p, 0.5));
  EXPECT_THROW(aw_phi43_oracle(2, 0.2, AWComplexParams{0.0, 0.0, 0.3, 0.3}, 0.5), DomainError);
}
