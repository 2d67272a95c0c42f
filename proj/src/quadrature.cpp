#include "qaw/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <vector>

#include <Eigen/Eigenvalues>

namespace qaw {
namespace {

constexpr int kRulePoints = 16;

const GaussRule& default_rule() {
  static const GaussRule rule = gauss_legendre(kRulePoints);
  return rule;
}

struct Panel {
  double a;
  double b;
  Eigen::VectorXd coarse;  // rule on [a, b]
  Eigen::VectorXd left;    // rule on [a, mid]
  Eigen::VectorXd right;   // rule on [mid, b]
  double error;
};

struct ByError {
  bool operator()(const Panel& x, const Panel& y) const {
    if (x.error != y.error) return x.error < y.error;
    return x.a > y.a;
  }
};

class Integrator {
 public:
  Integrator(const VectorIntegrand& f, Eigen::Index dim) : f_(f), dim_(dim) {}

  Eigen::VectorXd apply(double a, double b) {
    const GaussRule& r = default_rule();
    const double half = (b - a) / 2.0;
    const double mid = (a + b) / 2.0;
    Eigen::VectorXd sum = Eigen::VectorXd::Zero(dim_);
    for (Eigen::Index i = 0; i < r.nodes.size(); ++i) {
      const Eigen::VectorXd v = f_(mid + half * r.nodes(i));
      if (v.size() != dim_) throw DomainError("integrand returned a vector of the wrong size");
      sum += r.weights(i) * v;
    }
    evaluations_ += r.nodes.size();
    return half * sum;
  }

  Panel make(double a, double b, Eigen::VectorXd coarse) {
    const double mid = (a + b) / 2.0;
    Panel p{a, b, std::move(coarse), apply(a, mid), apply(mid, b), 0.0};
    p.error = (p.coarse - p.left - p.right).cwiseAbs().maxCoeff();
    return p;
  }

  long long evaluations() const { return evaluations_; }

 private:
  const VectorIntegrand& f_;
  Eigen::Index dim_;
  long long evaluations_ = 0;
};

}  // namespace

GaussRule gauss_legendre(int n) {
  if (n < 1) throw DomainError("gauss_legendre: n must be >= 1");
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    const double beta = k / std::sqrt(4.0 * k * k - 1.0);
    J(k - 1, k) = beta;
    J(k, k - 1) = beta;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(J);
  GaussRule rule{solver.eigenvalues(), 2.0 * solver.eigenvectors().row(0).array().square().transpose()};
  return rule;
}

VectorQuadratureEstimate integrate_interval(const VectorIntegrand& f, Eigen::Index dim, double a,
                                            double b, const QuadratureOptions& options) {
  if (!(options.target_tol > 0.0)) throw DomainError("quadrature: target_tol must be positive");
  if (options.initial_panels < 1 || options.max_panels < options.initial_panels)
    throw DomainError("quadrature: invalid panel limits");
  Integrator in(f, dim);
  std::priority_queue<Panel, std::vector<Panel>, ByError> queue;
  double error = 0.0;
  const double width = (b - a) / options.initial_panels;
  for (int i = 0; i < options.initial_panels; ++i) {
    const double lo = a + i * width;
    const double hi = i + 1 == options.initial_panels ? b : lo + width;
    Panel p = in.make(lo, hi, in.apply(lo, hi));
    error += p.error;
    queue.push(std::move(p));
  }

  const double eps = std::numeric_limits<double>::epsilon();
  int panels = options.initial_panels;
  while (error > options.target_tol) {
    const Panel& worst = queue.top();
    // At the rounding floor of the worst panel further splitting cannot help.
    const double floor = 64.0 * eps * (worst.left.cwiseAbs() + worst.right.cwiseAbs()).maxCoeff();
    if (worst.error <= floor) break;
    if (panels >= options.max_panels)
      throw ConvergenceError("quadrature: maximum number of panels reached");
    const Panel split = worst;
    queue.pop();
    const double mid = (split.a + split.b) / 2.0;
    Panel l = in.make(split.a, mid, split.left);
    Panel r = in.make(mid, split.b, split.right);
    error += l.error + r.error - split.error;
    queue.push(std::move(l));
    queue.push(std::move(r));
    ++panels;
  }

  // Sum left to right so the result does not depend on heap order.
  std::vector<Panel> all;
  all.reserve(queue.size());
  while (!queue.empty()) {
    all.push_back(queue.top());
    queue.pop();
  }
  std::sort(all.begin(), all.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
  Eigen::VectorXd value = Eigen::VectorXd::Zero(dim);
  double total_error = 0.0;
  for (const Panel& p : all) {
    value += p.left + p.right;
    total_error += p.error;
  }
  return {value, total_error, in.evaluations()};
}

VectorQuadratureEstimate integrate_on_S(const VectorIntegrand& f, Eigen::Index dim,
                                        const QParam<double>& q, const QuadratureOptions& options) {
  if (q.is_gaussian_branch())
    return integrate_interval(f, dim, -kGaussianHalfWidth, kGaussianHalfWidth, options);
  const double L = 2.0 / std::sqrt(1.0 - q.value());
  const VectorIntegrand g = [&f, L](double theta) -> Eigen::VectorXd {
    return f(L * std::cos(theta)) * (L * std::sin(theta));
  };
  return integrate_interval(g, dim, 0.0, std::numbers::pi, options);
}

QuadratureEstimate integrate_on_S(const ScalarIntegrand& f, const QParam<double>& q,
                                  double target_tol) {
  const VectorIntegrand g = [&f](double x) {
    Eigen::VectorXd v(1);
    v(0) = f(x);
    return v;
  };
  QuadratureOptions options;
  options.target_tol = target_tol;
  const VectorQuadratureEstimate r = integrate_on_S(g, 1, q, options);
  return {r.value(0), r.abs_error_estimate, r.evaluations};
}

}  // namespace qaw
