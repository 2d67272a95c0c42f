#pragma once

// Adaptive composite Gauss--Legendre quadrature over S(q). On |q| < 1 the integral is taken
// in theta with x = (2/sqrt(1-q)) cos(theta), so the square-root edge of every density
// becomes a smooth factor sin(theta). At q = 1 the real line is truncated to [-12, 12].

#include <functional>

#include <Eigen/Core>

#include "qaw/qcore.hpp"

namespace qaw {

struct QuadratureEstimate {
  double value;
  double abs_error_estimate;
  long long evaluations;
};

struct VectorQuadratureEstimate {
  Eigen::VectorXd value;
  double abs_error_estimate;  // max over components
  long long evaluations;
};

struct QuadratureOptions {
  double target_tol = 1e-12;
  int max_panels = 1 << 14;
  int initial_panels = 8;
};

/// n-point Gauss--Legendre rule on [-1, 1] from the eigen-decomposition of the Jacobi matrix.
struct GaussRule {
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;
};

GaussRule gauss_legendre(int n);

inline constexpr double kGaussianHalfWidth = 12.0;

using ScalarIntegrand = std::function<double(double)>;
using VectorIntegrand = std::function<Eigen::VectorXd(double)>;

/// Global adaptive bisection on [a, b]. Each panel's error is the gap between the rule on the
/// panel and on its two halves; panels are split until the summed error is below target_tol.
VectorQuadratureEstimate integrate_interval(const VectorIntegrand& f, Eigen::Index dim, double a,
                                            double b, const QuadratureOptions& options = {});

VectorQuadratureEstimate integrate_on_S(const VectorIntegrand& f, Eigen::Index dim,
                                        const QParam<double>& q,
                                        const QuadratureOptions& options = {});

QuadratureEstimate integrate_on_S(const ScalarIntegrand& f, const QParam<double>& q,
                                  double target_tol = 1e-12);

}  // namespace qaw
