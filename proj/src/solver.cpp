#include "rsv/solver.hpp"

#include <Eigen/QR>
#include <algorithm>
#include <limits>
#include <sstream>

#include "rsv/error.hpp"

namespace rsv {

namespace {

double max_abs(const std::vector<Complex>& v) {
  double m = 0.0;
  for (const auto& x : v) m = std::max(m, std::abs(x));
  return m;
}

double norm_or_zero(const SingularFunction& f, const NormParams& params) {
  const double l = log_weighted_norm(f, params);
  return std::isfinite(l) ? std::exp(l) : 0.0;
}

}  // namespace

Solution solve_inhomogeneous(const OperatorHandle& op, const SingularFunction& g, const SolveConfig& cfg) {
  require(cfg.rho > 0.0, ErrorCode::PreconditionViolated, "solve_inhomogeneous needs an explicit rho");
  require(cfg.tol > 0.0, ErrorCode::PreconditionViolated, "tolerance must be positive");
  require(g.sigma >= cfg.rho - 1.0 - 1e-12, ErrorCode::PreconditionViolated,
          "inhomogeneity is more singular than the solution space allows");
  const double delta = cfg.delta > 0.0 ? cfg.delta : 0.5 * op.grid->T();

  Solution sol;
  sol.rho = cfg.rho;
  sol.delta = delta;
  if (cfg.lambda > 0.0) {
    sol.lambda = cfg.lambda;
    sol.contraction = contraction_estimate(op, cfg.rho, cfg.lambda, delta, cfg.contraction);
  } else {
    const auto search = lambda_lower_search(op, cfg.rho, cfg.kappa_target, 0.0, delta, cfg.contraction);
    sol.lambda = search.lambda;
    sol.contraction = search.estimate;
  }
  const NormParams params{cfg.rho - 1.0, sol.lambda};
  const double kappa = std::min(sol.contraction.overall, 0.999);

  SingularFunction f = g;
  int rising = 0;
  bool converged = false;
  for (int it = 1; it <= cfg.max_iter; ++it) {
    SingularFunction next = combine(1.0, apply(op, f, Part::Full), 1.0, g);
    const SingularFunction diff = combine(1.0, next, -1.0, f);
    const double d = norm_or_zero(diff, params);
    const double scale = max_abs(next.g);
    const double span = scale > 0.0 ? max_abs(diff.g) / scale : 0.0;
    const double floor = 1e-13 * std::max(1.0, norm_or_zero(next, params));
    if (!sol.history.empty() && sol.history.back() > floor && d >= sol.history.back()) {
      if (++rising >= 3) {
        std::ostringstream os;
        os << "successive differences stopped shrinking at iteration " << it << " (" << d << ")";
        fail(ErrorCode::NotContracting, os.str());
      }
    } else {
      rising = 0;
    }
    sol.history.push_back(d);
    f = std::move(next);
    sol.iterations = it;
    if (d <= cfg.tol * (1.0 - kappa) && span <= cfg.tol) {
      converged = true;
      break;
    }
  }
  if (!converged) fail(ErrorCode::MaxIterExceeded, "Picard iteration did not reach the tolerance");

  const SingularFunction residual = combine(1.0, combine(1.0, f, -1.0, apply(op, f, Part::Full)), -1.0, g);
  sol.final_residual = norm_or_zero(residual, params);
  sol.f = f;
  sol.f_star = f;
  return sol;
}

Solution solve_homogeneous(const HomogeneousProblem& prob, const SolveConfig& cfg) {
  const KernelPair& kernel = prob.kernel;
  const GridPtr& grid = prob.grid;
  const double tau = prob.tau;
  const double theta = grid->ray().theta;
  const double gamma = kernel.star ? kernel.star->gamma : 1.0;

  double rho = cfg.rho;
  if (rho <= 0.0) {
    const ConditionReport reg = verify_reg_p(kernel.k0.p, kernel.k0.alpha, theta);
    rho = tau + std::min({gamma, reg.constants.at("epsilon"), 1.0});
  }
  require(rho > tau, ErrorCode::PreconditionViolated, "rho must exceed tau");

  double delta = cfg.delta;
  if (delta <= 0.0) {
    const ConditionReport sing = verify_sing(kernel.k0, tau, 0.5 * (tau + rho), {theta, grid->T(), grid->t_min()});
    delta = sing.constants.at("delta");
  }

  PrototypeSolution proto = compute_prototype(kernel.k0, tau, grid, 0.5 * delta, prob.quadrature);
  require(proto.M.has_value(), ErrorCode::NoLimit, "prototype has no leading coefficient");
  const SingularFunction f0 = proto.normalized();

  const OperatorHandle op{kernel, prob.quadrature, grid};
  const SingularFunction g = apply(op, f0, Part::Perturbation);

  SolveConfig inner = cfg;
  inner.rho = rho;
  inner.delta = delta;
  Solution sol = solve_inhomogeneous(op, g, inner);
  sol.tau = tau;
  sol.M = *proto.M;
  sol.f_star = sol.f;
  sol.f = combine(1.0, f0, 1.0, sol.f_star);
  sol.f.lambda_hint = estimate_growth_rate(sol.f);

  const NormParams home{tau - 1.0, sol.lambda};
  const SingularFunction res = combine(1.0, sol.f, -1.0, apply(op, sol.f, Part::Full));
  const double denom = log_weighted_norm(sol.f, home);
  sol.volterra_residual = std::exp(log_weighted_norm(res, home) - denom);
  if (!std::isfinite(sol.volterra_residual)) sol.volterra_residual = 0.0;
  return sol;
}

std::vector<Complex> series_oracle(const SeriesData& data, double tau, int N) {
  require(tau > 0.0, ErrorCode::PreconditionViolated, "series needs tau > 0");
  require(data.p.size() >= 2 && std::abs(data.p[1]) > 0.0, ErrorCode::DegenerateRoot, "p must have a simple root");
  auto coef = [](const std::vector<Complex>& v, int k) { return k >= 0 && k < static_cast<int>(v.size()) ? v[k] : Complex{}; };
  std::vector<Complex> c(N + 1, Complex{0.0, 0.0});
  c[0] = 1.0;
  const Complex p1 = data.p[1];
  for (int m = 1; m <= N; ++m) {
    const Complex denom = p1 * static_cast<double>(m) / (tau + m);
    require(std::abs(denom) > 1e-14 * std::abs(p1), ErrorCode::ResonanceError, "recursion denominator vanishes");
    Complex rhs{0.0, 0.0};
    for (int k = 2; k <= m + 1; ++k) rhs += coef(data.p, k) * c[m + 1 - k];
    for (int k = 1; k <= m; ++k) rhs += coef(data.q, k) * c[m - k] / (tau + m);
    for (int j = 0; j + 1 <= m; ++j) {
      const int n = m - j - 1;
      // Gamma(tau + n) / Gamma(tau + m + 1) as a finite product.
      double ratio = 1.0;
      for (int i = n; i <= m; ++i) ratio /= (tau + i);
      rhs += coef(data.R, j) * c[n] * ratio;
    }
    c[m] = -rhs / denom;
  }
  return c;
}

std::vector<Complex> fit_series_coefficients(const SingularFunction& f, int N, double t_fit, int degree) {
  require(N >= 1 && degree >= N, ErrorCode::PreconditionViolated, "fit degree must cover the requested coefficients");
  const RayGrid& grid = *f.grid;
  const Complex u = grid.ray().direction();
  std::vector<std::size_t> rows;
  for (std::size_t i = 0; i < grid.size(); ++i)
    if (grid.nodes()[i] <= t_fit) rows.push_back(i);
  require(static_cast<int>(rows.size()) > degree, ErrorCode::PreconditionViolated, "too few nodes for the fit");
  Eigen::MatrixXcd A(rows.size(), degree);
  Eigen::VectorXcd b(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const double y = grid.nodes()[rows[r]] / t_fit;
    Complex pw = y * u;
    for (int n = 0; n < degree; ++n) {
      A(r, n) = pw;
      pw *= y * u;
    }
    b(r) = f.g[rows[r]] - 1.0;
  }
  const Eigen::VectorXcd x = A.colPivHouseholderQr().solve(b);
  std::vector<Complex> c(N);
  for (int n = 0; n < N; ++n) c[n] = x(n) / std::pow(t_fit, n + 1);
  return c;
}

SpanComparison compare_on_common_span(const SingularFunction& f, const SingularFunction& h, const NormParams& params) {
  const double lo = std::max(f.grid->t_min(), h.grid->t_min());
  const double hi = std::min(f.grid->T(), h.grid->T());
  const double s = std::min(f.sigma, h.sigma);
  double weighted = 0.0, diff_sup = 0.0, ref_sup = 0.0;
  for (double t : f.grid->norm_samples()) {
    if (t < lo || t > hi) continue;
    const Complex a = f.eval(t), b = h.eval(t);
    const double d = std::abs(a - b);
    weighted = std::max(weighted, std::exp(-params.sigma * std::log(t) - params.lambda * t) * d);
    const double w = std::pow(t, -s);
    diff_sup = std::max(diff_sup, w * d);
    ref_sup = std::max(ref_sup, w * std::abs(a));
  }
  return {weighted, ref_sup > 0.0 ? diff_sup / ref_sup : diff_sup};
}

UniquenessReport uniqueness_probe(const HomogeneousProblem& prob, const Solution& sol, double rho_alt,
                                  const SolveConfig& cfg) {
  require(rho_alt > prob.tau && rho_alt != sol.rho, ErrorCode::PreconditionViolated,
          "alternative rho must exceed tau and differ from the original");
  SolveConfig alt = cfg;
  alt.rho = rho_alt;
  alt.lambda = 0.0;
  const Solution other = solve_homogeneous(prob, alt);
  const NormParams coarse{std::min(sol.rho, rho_alt) - 1.0, std::max(sol.lambda, other.lambda)};
  const SpanComparison cmp = compare_on_common_span(sol.f, other.f, coarse);
  UniquenessReport rep{sol.rho, rho_alt, other.lambda, cmp, cmp.weighted <= 10.0 * cfg.tol};
  if (!rep.agree) {
    std::ostringstream os;
    os << "solutions for rho=" << sol.rho << " and rho=" << rho_alt << " differ by " << cmp.weighted;
    fail(ErrorCode::MismatchDetected, os.str());
  }
  return rep;
}

}  // namespace rsv
