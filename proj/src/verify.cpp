#include "qaw/verify.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <random>

#include "json.hpp"

#include "qaw/densities.hpp"
#include "qaw/moments.hpp"
#include "qaw/polyfam.hpp"
#include "qaw/quadrature.hpp"

namespace qaw {
namespace {

using Params = std::vector<std::pair<std::string, double>>;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Tolerances {
  double exact = 0.0;
  double representation = 1e-10;
  double free_form = 1e-12;
  double orthogonality = 1e-8;
  double aw_orthogonality = 1e-7;
  double moments = 1e-7;
  double gaussian_moments = 1e-8;
  double poisson_mehler = 1e-8;
  double expansion = 1e-6;
  double chapman_kolmogorov = 1e-7;
  double sn_series = 1e-10;
  double bound_slack = 1e-12;
  double normalization = 1e-8;
  double vnm = 1e-6;
  double carlitz = 1e-8;
  double alpha = 1e-12;
};

Tolerances tolerances(const SuiteConfig& c) {
  Tolerances t;
  if (c.tol) {
    const double v = *c.tol;
    for (double* p : {&t.exact, &t.representation, &t.free_form, &t.orthogonality,
                      &t.aw_orthogonality, &t.moments, &t.gaussian_moments, &t.poisson_mehler,
                      &t.expansion, &t.chapman_kolmogorov, &t.sn_series, &t.bound_slack,
                      &t.normalization, &t.vnm, &t.carlitz, &t.alpha})
      *p = v;
  }
  return t;
}

/// Negation that keeps zero unsigned so reports never print -0.
double neg(double r) { return r == 0.0 ? 0.0 : -r; }

/// {-r, r}, or {0} when r = 0.
std::vector<double> signed_values(double r) {
  if (r == 0.0) return {0.0};
  return {-r, r};
}

double half_width(double q) { return q == 1.0 ? 2.0 : 2.0 / std::sqrt(1.0 - q); }

Eigen::VectorXd integrate(const VectorIntegrand& f, Eigen::Index dim, double q) {
  return integrate_on_S(f, dim, QParam<double>(q)).value;
}

/// Decimal grid values as exact small rationals; falls back to the exact binary value.
Rational to_rational(double v) {
  long long scale = 1;
  for (int k = 0; k <= 9; ++k, scale *= 10) {
    const double s = v * static_cast<double>(scale);
    if (std::abs(s - std::round(s)) < 1e-9) return Rational(static_cast<long long>(std::round(s)), scale);
  }
  return Rational(v);
}

double to_double(const Rational& r) { return static_cast<double>(r); }

/// Accumulates the largest |value| of exact residuals.
struct ExactMax {
  Rational worst = 0;
  void add(const Rational& r) {
    const Rational a = r < 0 ? Rational(-r) : r;
    if (a > worst) worst = a;
  }
  double value() const { return to_double(worst); }
};

class Suite {
 public:
  explicit Suite(const SuiteConfig& c) : c_(c), t_(tolerances(c)) {}

  void run(const std::string& name) {
    using Fn = void (Suite::*)();
    static const std::vector<std::pair<std::string, Fn>> table = {
        {"identities", &Suite::identities},
        {"representations", &Suite::representations},
        {"orthogonality_H", &Suite::orthogonality_H},
        {"orthogonality_P", &Suite::orthogonality_P},
        {"aw_orthogonality", &Suite::aw_orthogonality},
        {"cond_expectation", &Suite::cond_expectation},
        {"moments", &Suite::moments},
        {"collapses", &Suite::collapses},
        {"poisson_mehler", &Suite::poisson_mehler},
        {"expansion", &Suite::expansion},
        {"chapman_kolmogorov", &Suite::chapman_kolmogorov},
        {"sn_series", &Suite::sn_series},
        {"ratio_bounds", &Suite::ratio_bounds},
        {"bounds", &Suite::bounds},
        {"normalization", &Suite::normalization},
        {"Vnm", &Suite::vnm},
        {"carlitz", &Suite::carlitz},
        {"alpha_consistency", &Suite::alpha_consistency},
    };
    for (const auto& [n, fn] : table)
      if (n == name) return (this->*fn)();
    throw DomainError("unknown check: " + name);
  }

  std::vector<CheckReport> take() { return std::move(out_); }

 private:
  /// Runs body, turning library errors into a failing report.
  void guarded(const std::string& name, const Params& params, double tol,
               const std::function<double()>& body) {
    double r = kNaN;
    try {
      r = body();
    } catch (const Error&) {
      r = kNaN;
    }
    out_.push_back(make_report(name, params, r, tol));
  }

  void push(CheckReport r) { out_.push_back(std::move(r)); }

  template <class F>
  void push_guarded(const std::string& name, const Params& params, double tol, F&& f) {
    try {
      CheckReport r = f();
      r.tolerance = tol;
      r.pass = r.residual <= tol;
      push(std::move(r));
    } catch (const Error&) {
      out_.push_back(make_report(name, params, kNaN, tol));
    }
  }

  std::vector<double> open_qs() const {
    std::vector<double> v;
    for (double q : c_.q_grid)
      if (q != 1.0) v.push_back(q);
    return v;
  }

  void identities() {
    const int n_small = std::min(c_.nmax, 8);
    for (double qd : open_qs()) {
      const Rational q = to_rational(qd);
      guarded("identities.pochhammer_sums", {{"q", qd}, {"nmax", 12}}, t_.exact, [&] {
        ExactMax m;
        const Rational a(2, 3), b(-3, 5);
        for (int n = 0; n <= 12; ++n) {
          Rational first = 0, second = 0;
          for (int i = 0; i <= n; ++i) {
            first += q_binomial(n, i, q) * ipow(a, i) * q_pochhammer(a, q, n - i);
            second += sign_pow<Rational>(i) * ipow(q, choose2(i)) * q_binomial(n, i, q) *
                      q_pochhammer(a, q, i) * ipow(b, i) *
                      q_pochhammer(Rational(a * b * ipow(q, i)), q, n - i);
          }
          m.add(first - 1);
          m.add(second - q_pochhammer(b, q, n));
        }
        return m.value();
      });
      guarded("identities.bh", {{"q", qd}, {"nmax", n_small}}, t_.exact, [&] {
        ExactMax m;
        for (const Rational& x : {Rational(-3, 4), Rational(2, 3)})
          for (int n = 0; n <= n_small; ++n) {
            m.add(eval_in_H_basis(bh_expand_B(n, q), n, x, q) - b_big(n, x, q));
            for (int k = 0; k <= n_small; ++k) {
              m.add(eval_in_H_basis(linearize_HH(n, k, q), n + k, x, q) -
                    hermite_H(n, x, q) * hermite_H(k, x, q));
              m.add(eval_in_H_basis(product_HB(k, n, q), n + k, x, q) -
                    hermite_H(k, x, q) * b_big(n, x, q));
              m.add(I_nm(n, k, x, q) - I_nm_closed_form(n, k, x, q));
            }
          }
        return m.value();
      });
      for (double rd : c_.rho_grid) {
        const Rational rho = to_rational(rd);
        const Params pr{{"q", qd}, {"rho", rd}};
        const Rational x(1, 2), y(-3, 4), z(6, 5);
        guarded("identities.connection", pr, t_.exact, [&] {
          ExactMax m;
          for (int n = 0; n <= std::max(c_.nmax, 10); ++n) {
            m.add(connection_P_from_BH(n, x, y, rho, q) - asc_P(n, x, y, rho, q));
            m.add(connection_H_from_P(n, x, y, rho, q) - hermite_H(n, x, q));
            if (n >= 1) m.add(connection_BH_sum(n, x, q));
          }
          return m.value();
        });
        guarded("identities.al_salam", pr, t_.exact, [&] {
          ExactMax m;
          for (int k = 0; k <= n_small; ++k) m.add(alsalam_identity_residual(k, x, y, rho, q));
          return m.value();
        });
        const CondDensityParams<Rational> p{y, rho, z, Rational(rho / 2 - Rational(1, 5)), q};
        guarded("identities.symmetry", pr, t_.exact, [&] {
          ExactMax m;
          for (int n = 0; n <= n_small; ++n) {
            m.add(aw_A_mixed(n, x, p) - aw_A_mixed(n, x, p.swapped()));
            m.add(aw_A_mixed(n, x, p) - aw_A_sym(n, x, p));
          }
          return m.value();
        });
        guarded("identities.moment_forms", pr, t_.exact, [&] {
          ExactMax m;
          for (int n = 0; n <= std::max(c_.nmax, 10); ++n) m.add(c_n_main(n, p) - c_n_via_P(n, p));
          return m.value();
        });
      }
    }
  }

  void representations() {
    std::mt19937_64 gen(20240611);
    auto uniform = [&gen](double lo, double hi) {
      return lo + (hi - lo) * (static_cast<double>(gen() >> 11) * 0x1.0p-53);
    };
    auto sign = [&] { return uniform(0.0, 1.0) < 0.5 ? -1.0 : 1.0; };
    for (int i = 0; i < 20; ++i) {
      const double q = sign() * uniform(0.3, 0.8);
      const double L = half_width(q);
      const CondDensityParams<double> p{uniform(-0.9, 0.9) * L, sign() * uniform(0.1, 0.8),
                                        uniform(-0.9, 0.9) * L, sign() * uniform(0.1, 0.8), q};
      const double x = uniform(-0.9, 0.9) * L;
      const Params pr{{"q", q}, {"y", p.y}, {"rho1", p.rho1}, {"z", p.z}, {"rho2", p.rho2}, {"x", x}};
      guarded("representations", pr, t_.representation, [&] {
        const AWComplexParams a = map_params(p);
        const double s = std::sqrt(1.0 - q);
        double worst = 0.0;
        for (int n = 0; n <= 6; ++n) {
          const double ref = aw_A_sym(n, x, p);
          const double oracle = aw_phi43_oracle(n, x * s / 2.0, a, q).real() / std::pow(s, n);
          for (double v : {aw_A_mixed(n, x, p), aw_A_from_D(n, x, p), oracle})
            worst = std::max(worst, std::abs(v - ref) / std::max(1.0, std::abs(ref)));
        }
        return worst;
      });
    }
    for (double rd : c_.rho_grid)
      for (auto [y, z] : conditioning_points(0.0)) {
        const CondDensityParams<double> p{y, rd, z, 0.5, 0.0};
        guarded("representations.free", {{"y", y}, {"rho1", rd}, {"z", z}, {"rho2", 0.5}},
                t_.free_form, [&] {
                  const AWComplexParams a = map_params(p);
                  double worst = 0.0;
                  for (double x : {-0.9, -0.2, 0.4, 0.95}) {
                    worst = std::max(worst, std::abs(aw_D(1, x, a, 0.0) -
                                                     aw_D1_free<Complex>(x, a.a, a.b, a.c, a.d).real()));
                    worst = std::max(worst, std::abs(aw_D(2, x, a, 0.0) -
                                                     aw_D2_free<Complex>(x, a.a, a.b, a.c, a.d).real()));
                    for (int n = 0; n <= 6; ++n)
                      worst = std::max(worst, std::abs(aw_A_sym(n, 2 * x, p) - aw_A_free(n, 2 * x, p)));
                  }
                  return worst;
                });
      }
  }

  void orthogonality_H() {
    for (double q : c_.q_grid)
      push_guarded("orthogonality_H", {{"q", q}, {"nmax", c_.nmax}}, t_.orthogonality,
                   [&] { return check_orthogonality_H(c_.nmax, q, t_.orthogonality, c_.policy); });
  }

  void orthogonality_P() {
    for (double q : c_.q_grid)
      for (double rho : c_.rho_grid)
        for (auto [y, z] : conditioning_points(q)) {
          (void)z;
          push_guarded("orthogonality_P", {{"q", q}, {"y", y}, {"rho", rho}, {"nmax", c_.nmax}},
                       t_.orthogonality, [&] {
                         return check_orthogonality_P(c_.nmax, y, rho, q, t_.orthogonality, c_.policy);
                       });
        }
  }

  void cond_expectation() {
    for (double q : c_.q_grid)
      for (double rho : c_.rho_grid)
        for (auto [y, z] : conditioning_points(q)) {
          (void)z;
          push_guarded("cond_expectation", {{"q", q}, {"y", y}, {"rho", rho}, {"nmax", c_.nmax}},
                       t_.orthogonality, [&] {
                         return check_cond_expectation(c_.nmax, y, rho, q, t_.orthogonality, c_.policy);
                       });
        }
  }

  template <class F>
  void for_each_point(bool open_only, F&& f) {
    for (double q : open_only ? open_qs() : c_.q_grid)
      for (double r1 : c_.rho_grid)
        for (double r2 : c_.rho_grid)
          for (auto [y, z] : conditioning_points(q)) f(CondDensityParams<double>{y, r1, z, neg(r2), q});
  }

  static Params point_params(const CondDensityParams<double>& p) {
    return {{"q", p.q}, {"y", p.y}, {"rho1", p.rho1}, {"z", p.z}, {"rho2", p.rho2}};
  }

  void aw_orthogonality() {
    const int nmax = std::min(c_.nmax, 6);
    for_each_point(true, [&](const CondDensityParams<double>& p) {
      Params pr = point_params(p);
      pr.emplace_back("nmax", nmax);
      push_guarded("aw_orthogonality", pr, t_.aw_orthogonality,
                   [&] { return check_aw_orthogonality(nmax, p, t_.aw_orthogonality, c_.policy); });
    });
  }

  void moments() {
    const int nmax = c_.nmax;
    for_each_point(false, [&](const CondDensityParams<double>& p) {
      Params pr = point_params(p);
      pr.emplace_back("nmax", nmax);
      guarded("moments", pr, p.q == 1.0 ? t_.gaussian_moments : t_.moments, [&] {
        const Eigen::VectorXd v = integrate(
            [&](double x) -> Eigen::VectorXd {
              return hermite_H_sequence(nmax, x, p.q) * phi_cond(x, p, c_.policy).value;
            },
            nmax + 1, p.q);
        double worst = 0.0;
        for (int n = 0; n <= nmax; ++n) {
          const double ref = p.q == 1.0 ? c_n_gaussian(n, p.y, p.z, p.rho1, p.rho2) : c_n_main(n, p);
          worst = std::max(worst, std::abs(v(n) - ref));
        }
        return worst;
      });
    });
  }

  void collapses() {
    for (double qd : open_qs())
      for (double rd : c_.rho_grid)
        for (auto [yd, zd] : conditioning_points(qd)) {
          guarded("collapses.rho1_zero", {{"q", qd}, {"y", yd}, {"z", zd}, {"rho2", rd}}, t_.exact, [&] {
            const CondDensityParams<Rational> p{Rational(yd), 0, Rational(zd), to_rational(rd),
                                                to_rational(qd)};
            ExactMax m;
            for (int n = 0; n <= c_.nmax; ++n)
              m.add(c_n_main(n, p) - ipow(p.rho2, n) * hermite_H(n, p.z, p.q));
            return m.value();
          });
        }
    for (double r1 : c_.rho_grid)
      for (double r2 : c_.rho_grid)
        for (auto [y, z] : conditioning_points(0.0)) {
          const CondDensityParams<double> p{y, r1, z, neg(r2), 0.0};
          guarded("collapses.free_densities", point_params(p), t_.free_form, [&] {
            double worst = 0.0;
            for (int i = 0; i <= 40; ++i) {
              const double x = -2.0 + 0.1 * i;
              worst = std::max(worst, std::abs(f_N(x, 0.0, c_.policy).value - f_N_free(x)));
              worst = std::max(worst, std::abs(f_CN(x, y, r1, 0.0, c_.policy).value - f_CN_free(x, y, r1)));
              worst = std::max(worst, std::abs(phi_cond(x, p, c_.policy).value - phi_free(x, y, r1, z, neg(r2))));
            }
            return worst;
          });
        }
    const int nmax = std::min(c_.nmax, 6);
    for (double r1 : c_.rho_grid)
      for (double r2 : c_.rho_grid)
        for (auto [y, z] : conditioning_points(1.0)) {
          const CondDensityParams<double> p{y, r1, z, neg(r2), 1.0};
          Params pr = point_params(p);
          pr.emplace_back("nmax", nmax);
          guarded("collapses.gaussian_moments", pr, t_.gaussian_moments, [&] {
            const Eigen::VectorXd v = integrate(
                [&](double x) -> Eigen::VectorXd {
                  return hermite_H_sequence(nmax, x, 1.0) * phi_gaussian(x, y, r1, z, neg(r2));
                },
                nmax + 1, 1.0);
            double worst = 0.0;
            for (int n = 0; n <= nmax; ++n)
              worst = std::max(worst, std::abs(v(n) - c_n_gaussian(n, y, z, r1, neg(r2))));
            return worst;
          });
        }
  }

  void poisson_mehler() {
    const int N = 60;
    for (double q : {0.0, 0.5})
      for (double r : c_.rho_grid)
        for (double rho : signed_values(r)) {
          for (auto [y, z] : conditioning_points(q)) {
            (void)z;
            guarded("poisson_mehler", {{"q", q}, {"y", y}, {"rho", rho}, {"terms", N}},
                    t_.poisson_mehler, [&] {
                      const double L = half_width(q);
                      double worst = 0.0;
                      for (int i = 0; i <= 100; ++i) {
                        const double x = -L + 2.0 * L * i / 100.0;
                        worst = std::max(worst, std::abs(poisson_mehler_partial(x, y, rho, q, N, c_.policy) -
                                                         f_CN(x, y, rho, q, c_.policy).value));
                      }
                      return worst;
                    });
          }
        }
  }

  void expansion() {
    for_each_point(true, [&](const CondDensityParams<double>& p) {
      const double r = std::max(std::abs(p.rho1), std::abs(p.rho2));
      int N = 40;
      try {
        N = std::clamp(series_length(r, QParam<double>(p.q), t_.expansion, 40), 1, 40);
      } catch (const TruncationError&) {
        N = 40;
      }
      Params pr = point_params(p);
      pr.emplace_back("terms", N);
      guarded("expansion", pr, t_.expansion, [&] {
        const Vector<double> c = c_n_sequence(N, p);
        const double L = half_width(p.q);
        double worst = 0.0;
        for (int i = 0; i <= 100; ++i) {
          const double x = -L + 2.0 * L * i / 100.0;
          worst = std::max(worst, std::abs(phi_expansion_partial(x, p, c, c_.policy) -
                                           phi_cond(x, p, c_.policy).value));
        }
        return worst;
      });
    });
  }

  void chapman_kolmogorov() {
    for (double q : c_.q_grid) {
      const double L = half_width(q);
      const std::size_t nr = c_.rho_grid.size();
      for (int i = 0; i < 10; ++i) {
        const double x = L * std::cos((i + 0.5) * std::numbers::pi / 10.0);
        const double z = L * std::cos((i + 0.5) * std::numbers::pi / 10.0 + 1.0);
        const double r1 = c_.rho_grid[i % nr];
        const double r2 = neg(c_.rho_grid[(i + 1) % nr]);
        push_guarded("chapman_kolmogorov", {{"q", q}, {"x", x}, {"z", z}, {"rho1", r1}, {"rho2", r2}},
                     t_.chapman_kolmogorov, [&] {
                       return check_chapman_kolmogorov(x, z, r1, r2, q, t_.chapman_kolmogorov, c_.policy);
                     });
      }
    }
  }

  void sn_series() {
    for (double q : open_qs())
      for (double t : {0.0, 0.3, -0.3, 0.6})
        push_guarded("sn_series", {{"q", q}, {"t", t}}, t_.sn_series,
                     [&] { return check_sn_series(t, q, t_.sn_series, c_.policy); });
  }

  void ratio_bounds() {
    for (double q : open_qs())
      for (double r : c_.rho_grid)
        for (double rho : signed_values(r)) {
          for (auto [y, z] : conditioning_points(q)) {
            (void)z;
            guarded("ratio_bounds", {{"q", q}, {"y", y}, {"rho", rho}}, t_.bound_slack, [&] {
              const QParam<double> qp(q);
              const RatioBounds b = fcn_ratio_bounds(y, rho, qp, c_.policy);
              if (!(b.lower > 0.0)) return std::numeric_limits<double>::infinity();
              const double L = half_width(q);
              double worst = 0.0;
              for (int i = 1; i <= 101; ++i) {
                const double x = -L + 2.0 * L * i / 102.0;
                const double ratio =
                    f_CN(x, y, rho, qp, c_.policy).value / f_N(x, qp, c_.policy).value;
                worst = std::max({worst, (b.lower - ratio) / b.lower, (ratio - b.upper) / b.upper});
              }
              return worst;
            });
          }
        }
  }

  void bounds() {
    for (double q : open_qs()) {
      const double L = half_width(q);
      guarded("bounds.hermite", {{"q", q}, {"nmax", c_.nmax}}, t_.bound_slack, [&] {
        double worst = 0.0;
        for (int i = 0; i <= 200; ++i) {
          const Vector<double> h = hermite_H_sequence(c_.nmax, -L + 2.0 * L * i / 200.0, q);
          for (int n = 0; n <= c_.nmax; ++n)
            worst = std::max(worst, std::abs(h(n)) / (s_n(n, q) / std::pow(1.0 - q, n / 2.0)) - 1.0);
        }
        return worst;
      });
      for (double r1 : c_.rho_grid)
        for (double r2 : c_.rho_grid)
          guarded("bounds.moments", {{"q", q}, {"rho1", r1}, {"rho2", neg(r2)}, {"nmax", c_.nmax}},
                  t_.bound_slack, [&] {
                    double worst = 0.0;
                    for (int i = 0; i <= 20; ++i)
                      for (int j = 0; j <= 20; ++j) {
                        const CondDensityParams<double> p{-L + 0.1 * L * i, r1, -L + 0.1 * L * j, neg(r2), q};
                        for (int n = 0; n <= c_.nmax; ++n)
                          worst = std::max(worst, std::abs(c_n_main(n, p)) /
                                                          (s_n(n, q) / std::pow(1.0 - q, n / 2.0)) -
                                                      1.0);
                      }
                    return worst;
                  });
    }
  }

  void normalization() {
    for (double q : c_.q_grid) {
      guarded("normalization.f_N", {{"q", q}}, t_.normalization, [&] {
        const Eigen::VectorXd v = integrate(
            [&](double x) { return Eigen::VectorXd::Constant(1, f_N(x, q, c_.policy).value); }, 1, q);
        return std::abs(v(0) - 1.0);
      });
      for (double r : c_.rho_grid)
        for (auto [y, z] : conditioning_points(q)) {
          (void)z;
          guarded("normalization.f_CN", {{"q", q}, {"y", y}, {"rho", r}}, t_.normalization, [&] {
            const Eigen::VectorXd v = integrate(
                [&](double x) { return Eigen::VectorXd::Constant(1, f_CN(x, y, r, q, c_.policy).value); },
                1, q);
            return std::abs(v(0) - 1.0);
          });
        }
    }
    for_each_point(false, [&](const CondDensityParams<double>& p) {
      guarded("normalization.phi", point_params(p), t_.normalization, [&] {
        const Eigen::VectorXd v = integrate(
            [&](double x) { return Eigen::VectorXd::Constant(1, phi_cond(x, p, c_.policy).value); }, 1,
            p.q);
        return std::abs(v(0) - 1.0);
      });
    });
  }

  void vnm() {
    const int nmax = std::min(c_.nmax, 6);
    for_each_point(true, [&](const CondDensityParams<double>& p) {
      Params pr{{"q", p.q}, {"x", p.y}, {"z", p.z}, {"rho1", p.rho1}, {"rho2", p.rho2}, {"nmax", nmax}};
      guarded("Vnm", pr, t_.vnm, [&] {
        double worst = 0.0;
        for (int n = 0; n <= nmax; ++n)
          for (int m = 0; m <= n + 1; ++m)
            worst = std::max(worst,
                             check_Vnm(n, m, p.y, p.z, p.rho1, p.rho2, p.q, t_.vnm, c_.policy).residual);
        return worst;
      });
    });
  }

  void carlitz() {
    const int N = 80;
    for (double q : open_qs())
      for (double rho : c_.rho_grid)
        for (auto [x, y] : conditioning_points(q))
          guarded("carlitz", {{"q", q}, {"x", x}, {"y", y}, {"rho", rho}, {"terms", N}}, t_.carlitz, [&] {
            const double g00 = gamma_mk_partial(0, 0, x, y, rho, q, N);
            double worst = 0.0;
            for (int m = 0; m <= 3; ++m)
              for (int k = 0; k <= 3; ++k)
                worst = std::max(worst, std::abs(gamma_mk_partial(m, k, x, y, rho, q, N) / g00 -
                                                 carlitz_finite_sum(m, k, x, y, rho, q)));
            return worst;
          });
  }

  void alpha_consistency() {
    for_each_point(true, [&](const CondDensityParams<double>& p) {
      Params pr = point_params(p);
      pr.emplace_back("nmax", c_.nmax);
      guarded("alpha_consistency", pr, t_.alpha, [&] {
        double worst = 0.0;
        for (int n = 0; n <= c_.nmax; ++n) {
          const double ref = c_n_main(n, p);
          worst = std::max(worst, std::abs(c_n_from_alpha(n, p) - ref) / std::max(1.0, std::abs(ref)));
        }
        return worst;
      });
    });
  }

  const SuiteConfig& c_;
  Tolerances t_;
  std::vector<CheckReport> out_;
};

void append_double(std::string& s, double v) { s += format_double(v); }

}  // namespace

CheckReport make_report(std::string name, std::vector<std::pair<std::string, double>> params,
                        double residual, double tolerance) {
  const bool pass = residual <= tolerance;
  return {std::move(name), std::move(params), residual, tolerance, pass};
}

const std::vector<std::string>& check_names() {
  static const std::vector<std::string> names = {
      "identities",     "representations",    "orthogonality_H", "orthogonality_P",
      "aw_orthogonality", "cond_expectation", "moments",         "collapses",
      "poisson_mehler", "expansion",          "chapman_kolmogorov", "sn_series",
      "ratio_bounds",   "bounds",             "normalization",   "Vnm",
      "carlitz",        "alpha_consistency"};
  return names;
}

SuiteConfig default_suite() {
  SuiteConfig c;
  c.checks = check_names();
  return c;
}

std::vector<std::pair<double, double>> conditioning_points(double q) {
  const double L = half_width(q);
  return {{0.0, 0.0}, {0.5, -0.5}, {L * std::cos(1.2), L * std::cos(2.4)}};
}

CheckReport check_orthogonality_H(int nmax, double q, double tol, const TruncationPolicy& policy) {
  if (nmax < 0 || nmax > 12) throw DomainError("check_orthogonality_H: nmax must lie in [0, 12]");
  const int d = nmax + 1;
  const Eigen::VectorXd v = integrate(
      [&](double x) -> Eigen::VectorXd {
        const Vector<double> h = hermite_H_sequence(nmax, x, q) * std::sqrt(f_N(x, q, policy).value);
        Eigen::MatrixXd outer = h * h.transpose();
        return outer.reshaped();
      },
      d * d, q);
  double worst = 0.0;
  for (int n = 0; n <= nmax; ++n)
    for (int m = 0; m <= nmax; ++m)
      worst = std::max(worst, std::abs(v(n + d * m) - (n == m ? q_factorial(n, q) : 0.0)));
  return make_report("orthogonality_H", {{"q", q}, {"nmax", nmax}}, worst, tol);
}

CheckReport check_cond_expectation(int nmax, double y, double rho, double q, double tol,
                                   const TruncationPolicy& policy) {
  if (nmax < 0) throw DomainError("check_cond_expectation: nmax must be nonnegative");
  const QParam<double> qp(q);
  const Eigen::VectorXd v = integrate(
      [&](double x) -> Eigen::VectorXd {
        return hermite_H_sequence(nmax, x, q) * f_CN(x, y, rho, qp, policy).value;
      },
      nmax + 1, q);
  const Vector<double> hy = hermite_H_sequence(nmax, y, q);
  double worst = 0.0;
  for (int n = 0; n <= nmax; ++n) worst = std::max(worst, std::abs(v(n) - std::pow(rho, n) * hy(n)));
  return make_report("cond_expectation", {{"q", q}, {"y", y}, {"rho", rho}, {"nmax", nmax}}, worst, tol);
}

CheckReport check_orthogonality_P(int nmax, double y, double rho, double q, double tol,
                                  const TruncationPolicy& policy) {
  if (nmax < 0 || nmax > 12) throw DomainError("check_orthogonality_P: nmax must lie in [0, 12]");
  const QParam<double> qp(q);
  const int d = nmax + 1;
  const Eigen::VectorXd v = integrate(
      [&](double x) -> Eigen::VectorXd {
        const Vector<double> p =
            asc_P_sequence(nmax, x, y, rho, q) * std::sqrt(f_CN(x, y, rho, qp, policy).value);
        Eigen::MatrixXd outer = p * p.transpose();
        return outer.reshaped();
      },
      d * d, q);
  const double r2 = rho * rho;
  double worst = 0.0;
  for (int n = 0; n <= nmax; ++n)
    for (int m = 0; m <= nmax; ++m) {
      const double ref = n == m ? q_pochhammer(r2, q, n) * q_factorial(n, q) : 0.0;
      worst = std::max(worst, std::abs(v(n + d * m) - ref));
    }
  return make_report("orthogonality_P", {{"q", q}, {"y", y}, {"rho", rho}, {"nmax", nmax}}, worst, tol);
}

CheckReport check_chapman_kolmogorov(double x, double z, double rho1, double rho2, double q,
                                     double tol, const TruncationPolicy& policy) {
  const QParam<double> qp(q);
  const Eigen::VectorXd v = integrate(
      [&](double y) {
        return Eigen::VectorXd::Constant(
            1, f_CN(x, y, rho1, qp, policy).value * f_CN(y, z, rho2, qp, policy).value);
      },
      1, q);
  const double ref = f_CN(x, z, rho1 * rho2, qp, policy).value;
  return make_report("chapman_kolmogorov", {{"q", q}, {"x", x}, {"z", z}, {"rho1", rho1}, {"rho2", rho2}},
                     std::abs(v(0) - ref), tol);
}

CheckReport check_sn_series(double t, double q, double tol, const TruncationPolicy& policy) {
  if (!(std::abs(t) < 1.0)) throw DomainError("check_sn_series: |t| must be < 1");
  const QParam<double> qp(q);
  if (qp.is_gaussian_branch()) throw DomainError("check_sn_series: requires |q| < 1");
  const double pt = q_pochhammer_inf(t, qp, policy);
  const double first_ref = 1.0 / (pt * pt);
  const double second_ref = q_pochhammer_inf(t * t, qp, policy) / (pt * pt * pt * pt);
  double first = 0.0, second = 0.0;
  double ti = 1.0, qi = 1.0;  // t^i, (q)_i
  for (int i = 0; i < policy.max_terms; ++i) {
    if (i > 0) {
      ti *= t;
      qi *= 1.0 - std::pow(q, i);
    }
    const double s = s_n(i, q);
    const double a = s * ti / qi;
    const double b = s * s * ti / qi;
    first += a;
    second += b;
    if (std::abs(b) + std::abs(a) < 1e-3 * policy.rel_tol * (std::abs(first) + std::abs(second)) && i > 2)
      break;
  }
  auto rel = [](double v, double ref) { return std::abs(v - ref) / std::max(1.0, std::abs(ref)); };
  const double r = std::max(rel(first, first_ref), rel(second, second_ref));
  return make_report("sn_series", {{"q", q}, {"t", t}}, r, tol);
}

CheckReport check_aw_orthogonality(int nmax, const CondDensityParams<double>& p, double tol,
                                   const TruncationPolicy& policy) {
  if (nmax < 0 || nmax > 8) throw DomainError("check_aw_orthogonality: nmax must lie in [0, 8]");
  p.validate();
  if (p.q == 1.0) throw DomainError("check_aw_orthogonality: requires |q| < 1");
  const int d = nmax + 1;
  const Eigen::VectorXd v = integrate(
      [&](double x) -> Eigen::VectorXd {
        Vector<double> a(d);
        for (int n = 0; n <= nmax; ++n) a(n) = aw_A_sym(n, x, p);
        a *= std::sqrt(phi_cond(x, p, policy).value);
        Eigen::MatrixXd outer = a * a.transpose();
        return outer.reshaped();
      },
      d * d, p.q);
  double worst = 0.0;
  for (int n = 0; n <= nmax; ++n)
    for (int m = 0; m <= nmax; ++m)
      if (n != m) worst = std::max(worst, std::abs(v(n + d * m)));
  return make_report("aw_orthogonality",
                     {{"q", p.q}, {"y", p.y}, {"rho1", p.rho1}, {"z", p.z}, {"rho2", p.rho2}, {"nmax", nmax}},
                     worst, tol);
}

double vnm_closed_form(int n, int m, double x, double z, double rho1, double rho2, double q) {
  if (n < 0 || m < 0) throw DomainError("vnm_closed_form: indices must be nonnegative");
  if (m > n) return 0.0;
  const double r1 = rho1 * rho1;
  const double r2 = rho2 * rho2;
  const double pre = detail::aw_prefactor(n, r1, r2, q, "vnm_closed_form");
  return pre * sign_pow<double>(m) * std::pow(q, choose2(m)) * std::pow(rho1, m) * q_factorial(n, q) /
         q_factorial(n - m, q) * asc_P(n - m, x, z, rho2, q) / q_pochhammer(r2, q, n - m);
}

CheckReport check_Vnm(int n, int m, double x, double z, double rho1, double rho2, double q, double tol,
                      const TruncationPolicy& policy) {
  if (n < 0 || m < 0) throw DomainError("check_Vnm: indices must be nonnegative");
  const QParam<double> qp(q);
  if (qp.is_gaussian_branch()) throw DomainError("check_Vnm: requires |q| < 1");
  const Eigen::VectorXd v = integrate(
      [&](double y) {
        const CondDensityParams<double> p{y, rho1, z, rho2, q};
        return Eigen::VectorXd::Constant(
            1, aw_A_sym(n, x, p) * asc_P(m, y, x, rho1, q) * f_CN(y, x, rho1, qp, policy).value);
      },
      1, q);
  const double ref = vnm_closed_form(n, m, x, z, rho1, rho2, q);
  return make_report("Vnm", {{"q", q}, {"x", x}, {"z", z}, {"rho1", rho1}, {"rho2", rho2}, {"n", n}, {"m", m}},
                     std::abs(v(0) - ref), tol);
}

std::vector<CheckReport> run_suite(const SuiteConfig& config) {
  if (config.nmax < 0 || config.nmax > 12) throw DomainError("nmax must lie in [0, 12]");
  if (config.tol && !(*config.tol >= 0.0)) throw DomainError("tol must be nonnegative");
  config.policy.validate();
  for (double q : config.q_grid) QParam<double> check(q);
  for (double r : config.rho_grid)
    if (!(r >= 0.0 && r < 1.0)) throw DomainError("rho grid values must lie in [0, 1)");
  for (const std::string& name : config.checks)
    if (std::find(check_names().begin(), check_names().end(), name) == check_names().end())
      throw DomainError("unknown check: " + name);
  Suite suite(config);
  for (const std::string& name : config.checks) suite.run(name);
  return suite.take();
}

bool all_pass(const std::vector<CheckReport>& reports) {
  return std::all_of(reports.begin(), reports.end(), [](const CheckReport& r) { return r.pass; });
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string reports_to_json(const std::vector<CheckReport>& reports) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const CheckReport& r : reports) {
    nlohmann::ordered_json params = nlohmann::ordered_json::object();
    for (const auto& [k, v] : r.params) params[k] = v;
    nlohmann::ordered_json o;
    o["name"] = r.name;
    o["params"] = params;
    o["residual"] = std::isfinite(r.residual) ? nlohmann::ordered_json(r.residual) : nlohmann::ordered_json(format_double(r.residual));
    o["tolerance"] = r.tolerance;
    o["pass"] = r.pass;
    arr.push_back(std::move(o));
  }
  return arr.dump(2) + "\n";
}

std::string reports_to_text(const std::vector<CheckReport>& reports) {
  std::string s;
  std::size_t failed = 0;
  for (const CheckReport& r : reports) {
    s += r.pass ? "PASS " : "FAIL ";
    s += r.name;
    for (const auto& [k, v] : r.params) {
      s += ' ';
      s += k;
      s += '=';
      append_double(s, v);
    }
    s += " residual=";
    append_double(s, r.residual);
    s += " tol=";
    append_double(s, r.tolerance);
    s += '\n';
    if (!r.pass) ++failed;
  }
  s += std::to_string(reports.size() - failed) + "/" + std::to_string(reports.size()) + " checks passed\n";
  return s;
}

}  // namespace qaw
