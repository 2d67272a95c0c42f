#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "qaw/moments.hpp"
#include "support.hpp"

using namespace qaw;
using qaw::test::rel_err;
using qaw::test::Rng;

namespace {

using RP = CondDensityParams<Rational>;

RP random_rational_point(Rng& rng) {
  return {rng.rational(2.0), rng.rational(), rng.rational(2.0), rng.rational(), rng.rational()};
}

}  // namespace

TEST(CnMain, Examples) {
  const CondDensityParams<double> p{0.4, 0.5, -0.6, 0.7, 0.5};
  EXPECT_EQ(c_n_main(0, p), 1.0);
  const double r1 = 0.5, r2 = 0.7;
  const double n1 = (r1 * (1 - r2 * r2) * 0.4 + r2 * (1 - r1 * r1) * -0.6) / (1 - r1 * r1 * r2 * r2);
  EXPECT_NEAR(c_n_main(1, p), n1, 1e-15);
  EXPECT_THROW(c_n_main(1, CondDensityParams<double>{0.4, 0.5, -0.6, 0.7, 1.0}), DomainError);
  EXPECT_THROW(c_n_via_P(1, CondDensityParams<double>{0.4, 0.5, -0.6, 0.7, 1.0}), DomainError);
}

TEST(CnMain, MatchesSingleSumExactly) {
  const RP ref{Rational(2, 5), Rational(1, 2), Rational(-3, 5), Rational(7, 10), Rational(1, 2)};
  for (int n = 0; n <= 10; ++n) EXPECT_EQ(c_n_main(n, ref), c_n_via_P(n, ref)) << n;
  Rng rng(101);
  for (int t = 0; t < 5; ++t) {
    const RP p = random_rational_point(rng);
    for (int n = 0; n <= 10; ++n) EXPECT_EQ(c_n_main(n, p), c_n_via_P(n, p)) << n;
  }
}

TEST(CnMain, SymmetricExactly) {
  Rng rng(102);
  for (int t = 0; t < 5; ++t) {
    const RP p = random_rational_point(rng);
    for (int n = 0; n <= 8; ++n) {
      EXPECT_EQ(c_n_main(n, p), c_n_main(n, p.swapped()));
      EXPECT_EQ(c_n_via_P(n, p), c_n_via_P(n, p.swapped()));
    }
  }
}

TEST(CnMain, Collapses) {
  Rng rng(103);
  for (int t = 0; t < 5; ++t) {
    RP p = random_rational_point(rng);
    for (int n = 0; n <= 8; ++n) {
      RP a = p;
      a.rho1 = 0;
      EXPECT_EQ(c_n_main(n, a), ipow(a.rho2, n) * hermite_H(n, a.z, a.q));
      EXPECT_EQ(c_n_via_P(n, a), ipow(a.rho2, n) * hermite_H(n, a.z, a.q));
      RP b = p;
      b.rho2 = 0;
      EXPECT_EQ(c_n_main(n, b), ipow(b.rho1, n) * hermite_H(n, b.y, b.q));
      EXPECT_EQ(c_n_via_P(n, b), ipow(b.rho1, n) * hermite_H(n, b.y, b.q));
    }
  }
}

TEST(CnMain, BoundedOnSupport) {
  for (double q : {-0.5, 0.0, 0.3, 0.7}) {
    const double L = 2 / std::sqrt(1 - q);
    for (int n = 0; n <= 8; ++n) {
      const double bound = s_n(n, q) / std::pow(1 - q, n / 2.0);
      for (int i = 0; i <= 10; ++i)
        for (int j = 0; j <= 10; ++j) {
          const CondDensityParams<double> p{-L + 0.2 * L * i, 0.6, -L + 0.2 * L * j, -0.6, q};
          EXPECT_LE(std::abs(c_n_main(n, p)), bound * (1 + 1e-12));
        }
    }
  }
}

TEST(CnGaussian, Examples) {
  EXPECT_EQ(c_n_gaussian(0, 0.3, -0.2, 0.5, 0.4), 1.0);
  EXPECT_NEAR(c_n_gaussian(2, 0.0, 0.0, 0.5, 0.5), -0.4, 1e-15);
  const double r1 = 0.5, r2 = 0.4, y = 0.3, z = -0.2;
  EXPECT_NEAR(c_n_gaussian(1, y, z, r1, r2),
              (r1 * (1 - r2 * r2) * y + r2 * (1 - r1 * r1) * z) / (1 - r1 * r1 * r2 * r2), 1e-15);
  EXPECT_EQ(c_n_gaussian(0, 0.3, -0.2, 0.0, 0.0), 1.0);
  EXPECT_EQ(c_n_gaussian(3, 0.3, -0.2, 0.0, 0.0), 0.0);
  EXPECT_THROW(c_n_gaussian(1, 0.3, -0.2, 1.0, 0.0), DomainError);
}

// At q = 1, C_n is E He_n(X) for X normal with the conditional mean and variance, so the
// generating function gives C_n = sum_k C(n,2k) (2k-1)!! (var-1)^k mean^{n-2k}.
TEST(CnGaussian, MatchesNormalMoments) {
  for (double r1 : {0.0, 0.3, -0.6})
    for (double r2 : {0.2, 0.6}) {
      const double y = 0.8, z = -1.1;
      const double den = 1 - r1 * r1 * r2 * r2;
      const double mean = (y * r1 * (1 - r2 * r2) + z * r2 * (1 - r1 * r1)) / den;
      const double var = (1 - r1 * r1) * (1 - r2 * r2) / den;
      for (int n = 0; n <= 8; ++n) {
        double sum = 0;
        double binom = 1;
        double dfact = 1;
        for (int k = 0; 2 * k <= n; ++k) {
          if (k > 0) {
            binom *= double(n - 2 * k + 2) * (n - 2 * k + 1) / ((2 * k - 1) * (2 * k));
            dfact *= 2 * k - 1;
          }
          sum += binom * dfact * std::pow(var - 1, k) * std::pow(mean, n - 2 * k);
        }
        EXPECT_LT(rel_err(c_n_gaussian(n, y, z, r1, r2), sum), 1e-13) << n;
      }
    }
}

TEST(Alpha, Examples) {
  const double r1 = 0.5, r2 = 0.4, q = 0.3;
  EXPECT_NEAR(alpha_coeff(1, 1, 0, r1, r2, q), r1 * (1 - r2 * r2) / (1 - r1 * r1 * r2 * r2), 1e-15);
  EXPECT_EQ(alpha_coeff(5, 2, 2, r1, r2, q), 0.0);
  EXPECT_EQ(alpha_coeff(4, 3, 2, r1, r2, q), 0.0);
  EXPECT_NE(alpha_coeff(4, 3, 1, r1, r2, q), 0.0);
  EXPECT_THROW(alpha_coeff(-1, 0, 0, r1, r2, q), DomainError);
}

TEST(Alpha, ReproducesMomentsExactly) {
  Rng rng(104);
  for (int t = 0; t < 5; ++t) {
    const RP p = random_rational_point(rng);
    for (int n = 0; n <= 8; ++n) EXPECT_EQ(c_n_from_alpha(n, p), c_n_main(n, p)) << n;
  }
}

TEST(Alpha, ConsistentInDouble) {
  Rng rng(105);
  for (int t = 0; t < 20; ++t) {
    const double q = rng.uniform(-0.6, 0.8);
    const double L = 2 / std::sqrt(1 - q);
    const CondDensityParams<double> p{rng.uniform(-L, L), rng.uniform(-0.8, 0.8), rng.uniform(-L, L),
                                      rng.uniform(-0.8, 0.8), q};
    for (int n = 0; n <= 8; ++n) EXPECT_LT(rel_err(c_n_from_alpha(n, p), c_n_main(n, p)), 1e-12);
  }
}

TEST(Gamma, Examples) {
  EXPECT_EQ(gamma_mk_partial(2, 3, 0.4, -0.3, 0.5, 0.5, 0), 0.0);
  EXPECT_DOUBLE_EQ(gamma_mk_partial(2, 3, 0.4, -0.3, 0.0, 0.5, 30),
                   hermite_H(2, 0.4, 0.5) * hermite_H(3, -0.3, 0.5));
}

TEST(Gamma, KernelRatioMatchesFiniteSum) {
  const double q = 0.5, rho = 0.5;
  for (double x : {-1.5, 0.3})
    for (double y : {-0.7, 1.9}) {
      const double g00 = gamma_mk_partial(0, 0, x, y, rho, q, 80);
      for (int m = 0; m <= 3; ++m)
        for (int k = 0; k <= 3; ++k)
          EXPECT_LT(std::abs(gamma_mk_partial(m, k, x, y, rho, q, 80) / g00 -
                             carlitz_finite_sum(m, k, x, y, rho, q)),
                    1e-8)
              << m << " " << k;
    }
  EXPECT_LT(std::abs(gamma_mk_partial(1, 2, 0.3, -0.7, rho, q, 60) / gamma_mk_partial(0, 0, 0.3, -0.7, rho, q, 60) -
                     carlitz_finite_sum(1, 2, 0.3, -0.7, rho, q)),
            1e-8);
}

TEST(AlSalam, ExactResidual) {
  Rng rng(106);
  for (int t = 0; t < 5; ++t) {
    const Rational q = rng.rational();
    const Rational rho = rng.rational();
    const Rational x = rng.rational(2.0);
    const Rational y = rng.rational(2.0);
    for (int m = 0; m <= 8; ++m) EXPECT_EQ(alsalam_identity_residual(m, x, y, rho, q), Rational(0)) << m;
  }
  EXPECT_NEAR(alsalam_identity_residual(1, 0.2, 0.5, 0.3, 0.5), 0.0, 1e-15);
  EXPECT_EQ(alsalam_identity_residual(0, 0.2, 0.5, 0.3, 0.5), 0.0);
}

TEST(Expansion, TrivialWithoutCorrelation) {
  for (int N : {1, 5, 20})
    EXPECT_NEAR(phi_expansion_partial(0.4, {0.3, 0.0, -0.2, 0.0, 0.5}, N), f_N(0.4, 0.5).value, 1e-15);
  EXPECT_THROW(phi_expansion_partial(0.4, {0.3, 0.0, -0.2, 0.0, 0.5}, 0), DomainError);
}

TEST(Expansion, ConvergesToDensity) {
  for (double q : {-0.5, 0.0, 0.3, 0.7})
    for (double r : {0.3, 0.6}) {
      const double L = 2 / std::sqrt(1 - q);
      const CondDensityParams<double> p{0.5 * L, r, -0.3 * L, -r, q};
      const Vector<double> c = c_n_sequence(40, p);
      double sup = 0;
      for (int i = 0; i <= 40; ++i) {
        const double x = -L + 2 * L * i / 40;
        sup = std::max(sup, std::abs(phi_expansion_partial(x, p, c) - phi_cond(x, p).value));
      }
      EXPECT_LT(sup, 1e-6) << q << " " << r;
    }
  const CondDensityParams<double> p0{-0.3, 0.4, 0.8, 0.5, 0.0};
  EXPECT_LT(std::abs(phi_expansion_partial(0.5, p0, 40) - phi_free(0.5, -0.3, 0.4, 0.8, 0.5)), 1e-6);
}

TEST(Expansion, ErrorShrinksWithTerms) {
  const CondDensityParams<double> p{0.6, 0.6, -0.9, 0.5, 0.5};
  const double L = 2 / std::sqrt(0.5);
  double last = INFINITY;
  for (int N : {10, 20, 40}) {
    double sup = 0;
    for (int i = 0; i <= 40; ++i) {
      const double x = -L + 2 * L * i / 40;
      sup = std::max(sup, std::abs(phi_expansion_partial(x, p, N) - phi_cond(x, p).value));
    }
    EXPECT_LT(sup, last);
    last = sup;
  }
}

TEST(PoissonMehler, ConvergesToFCN) {
  for (double q : {0.0, 0.5})
    for (double rho : {-0.6, 0.3, 0.6}) {
      const double L = 2 / std::sqrt(1 - q);
      const double y = 0.4 * L;
      double sup = 0;
      for (int i = 0; i <= 50; ++i) {
        const double x = -L + 2 * L * i / 50;
        sup = std::max(sup, std::abs(poisson_mehler_partial(x, y, rho, q, 60) - f_CN(x, y, rho, q).value));
      }
      EXPECT_LT(sup, 1e-8) << q << " " << rho;
    }
}

TEST(SeriesLength, BoundsTheTerm) {
  for (double q : {-0.5, 0.0, 0.5})
    for (double r : {0.0, 0.3, 0.6}) {
      const int N = series_length(r, q, 1e-10);
      const double s = s_n(N, q);
      EXPECT_LT(s * s * std::pow(r / (1 - q), N) / q_factorial(N, q), 1e-10);
    }
  EXPECT_EQ(series_length(0.0, 0.5, 1e-10), 1);
  EXPECT_THROW(series_length(1.0, 0.5, 1e-10), DomainError);
  EXPECT_THROW(series_length(0.9, 0.9, 1e-30, 5), TruncationError);
}
