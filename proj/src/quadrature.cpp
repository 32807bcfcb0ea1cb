#include "rsv/quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>

#include "rsv/error.hpp"

namespace rsv {
namespace {

QuadratureRule golub_welsch(int m, double a, double b) {
  require(m >= 1, ErrorCode::DomainError, "quadrature order must be positive");
  require(a > -1.0 && b > -1.0, ErrorCode::DomainError, "Jacobi exponents must exceed -1");
  const double ab = a + b;

  // Three-term recurrence of the monic Jacobi polynomials.
  Eigen::VectorXd diag(m);
  Eigen::VectorXd offdiag(std::max(m - 1, 0));
  for (int k = 0; k < m; ++k) {
    const double s = 2.0 * k + ab;
    if (k == 0) {
      diag(k) = (b - a) / (ab + 2.0);
    } else {
      diag(k) = (b * b - a * a) / (s * (s + 2.0));
    }
  }
  for (int k = 1; k < m; ++k) {
    const double s = 2.0 * k + ab;
    double beta;
    if (k == 1) {
      beta = 4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab));
    } else {
      beta = 4.0 * k * (k + a) * (k + b) * (k + ab) / (s * s * (s + 1.0) * (s - 1.0));
    }
    offdiag(k - 1) = std::sqrt(beta);
  }

  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(m, m);
  for (int k = 0; k < m; ++k) jacobi(k, k) = diag(k);
  for (int k = 0; k + 1 < m; ++k) jacobi(k, k + 1) = jacobi(k + 1, k) = offdiag(k);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jacobi);

  const double mu0 = std::exp((ab + 1.0) * std::log(2.0) + std::lgamma(a + 1.0) +
                              std::lgamma(b + 1.0) - std::lgamma(ab + 2.0));
  QuadratureRule rule;
  rule.a = a;
  rule.b = b;
  rule.nodes.resize(m);
  rule.weights.resize(m);
  for (int k = 0; k < m; ++k) {
    rule.nodes[k] = solver.eigenvalues()(k);
    const double v0 = solver.eigenvectors()(0, k);
    rule.weights[k] = mu0 * v0 * v0;
  }
  return rule;
}

}  // namespace

const QuadratureRule& gauss_jacobi(int m, double a, double b) {
  static std::mutex mutex;
  static std::map<std::tuple<int, double, double>, std::unique_ptr<QuadratureRule>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[{m, a, b}];
  if (!slot) slot = std::make_unique<QuadratureRule>(golub_welsch(m, a, b));
  return *slot;
}

EndpointRule parse_endpoint_rule(const std::string& name) {
  if (name == "gauss-jacobi") return EndpointRule::GaussJacobi;
  if (name == "gauss-legendre") return EndpointRule::GaussLegendre;
  fail(ErrorCode::ConfigError, "unknown quadrature rule '" + name + "'");
}

std::string to_string(EndpointRule rule) {
  return rule == EndpointRule::GaussJacobi ? "gauss-jacobi" : "gauss-legendre";
}

}  // namespace rsv
