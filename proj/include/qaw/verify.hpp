#pragma once

// Verification suite: orthogonality relations, conditional expectations, Chapman--Kolmogorov,
// series identities and the moment formulas, checked by quadrature or exact arithmetic.
// Reports are ordered deterministically and serialize to JSON or aligned text.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qaw/awpoly.hpp"
#include "qaw/qcore.hpp"

namespace qaw {

struct CheckReport {
  std::string name;
  std::vector<std::pair<std::string, double>> params;
  double residual;
  double tolerance;
  bool pass;  // residual <= tolerance; false for NaN
};

CheckReport make_report(std::string name, std::vector<std::pair<std::string, double>> params,
                        double residual, double tolerance);

/// Every check name accepted by run_suite, in report order.
const std::vector<std::string>& check_names();

struct SuiteConfig {
  std::vector<std::string> checks;
  std::vector<double> q_grid{-0.5, 0.0, 0.3, 0.7};
  std::vector<double> rho_grid{0.0, 0.3, 0.6};
  int nmax = 8;
  std::optional<double> tol;  // overrides every per-check tolerance
  TruncationPolicy policy;
};

/// The default configuration with every check selected.
SuiteConfig default_suite();

/// Conditioning points (y, z) used on S(q): (0,0), (0.5,-0.5) and (L cos 1.2, L cos 2.4) with
/// L = 2/sqrt(1-q), or L = 2 at q = 1.
std::vector<std::pair<double, double>> conditioning_points(double q);

/// max over n, m <= nmax of |int H_n H_m f_N - delta_{nm} [n]_q!|.
CheckReport check_orthogonality_H(int nmax, double q, double tol,
                                  const TruncationPolicy& policy = {});

/// max over n <= nmax of |int H_n f_CN(.|y,rho) - rho^n H_n(y)|.
CheckReport check_cond_expectation(int nmax, double y, double rho, double q, double tol,
                                   const TruncationPolicy& policy = {});

/// max over n, m <= nmax of |int P_n P_m f_CN - delta_{nm} (rho^2)_n [n]_q!|.
CheckReport check_orthogonality_P(int nmax, double y, double rho, double q, double tol,
                                  const TruncationPolicy& policy = {});

/// |int f_CN(x|y,rho1) f_CN(y|z,rho2) dy - f_CN(x|z,rho1 rho2)|.
CheckReport check_chapman_kolmogorov(double x, double z, double rho1, double rho2, double q,
                                     double tol, const TruncationPolicy& policy = {});

/// Larger residual of the two generating-function identities for s_n(q), relative to
/// max(1, |product side|).
CheckReport check_sn_series(double t, double q, double tol, const TruncationPolicy& policy = {});

/// max over n != m <= nmax of |int A_n A_m phi|. Requires |q| < 1.
CheckReport check_aw_orthogonality(int nmax, const CondDensityParams<double>& p, double tol,
                                   const TruncationPolicy& policy = {});

/// |V_{n,m} - closed form| where V_{n,m} = int A_n(x|y,rho1,z,rho2) P_m(y|x,rho1) f_CN(y|x,rho1) dy.
CheckReport check_Vnm(int n, int m, double x, double z, double rho1, double rho2, double q,
                      double tol, const TruncationPolicy& policy = {});

/// Closed form of V_{n,m}; zero when m > n.
double vnm_closed_form(int n, int m, double x, double z, double rho1, double rho2, double q);

/// Runs the selected checks. Throws DomainError for an unknown check name or an invalid grid.
std::vector<CheckReport> run_suite(const SuiteConfig& config);

bool all_pass(const std::vector<CheckReport>& reports);

/// JSON array of {name, params, residual, tolerance, pass}; doubles in shortest round-trip form.
std::string reports_to_json(const std::vector<CheckReport>& reports);

/// One line per report followed by a summary line.
std::string reports_to_text(const std::vector<CheckReport>& reports);

/// Shortest decimal string that reads back to v.
std::string format_double(double v);

}  // namespace qaw
