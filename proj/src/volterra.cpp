#include "rsv/volterra.hpp"

#include <algorithm>
#include <limits>
#include <random>

#include "rsv/error.hpp"
#include "rsv/parallel.hpp"

namespace rsv {

namespace {

bool is_integer(double x) { return std::abs(x - std::round(x)) < 1e-14; }

// h(t_a) = (t_a u)^{1-shift} int_0^1 k(x_a, s x_a) s^sigma g(s t_a) ds for
// every node, with an optional Jacobi weight (1-s)^diag divided out of k.
template <class K>
SingularFunction integrate_nodes(const OperatorHandle& op, const SingularFunction& phi, double shift, double diag,
                                 K&& kernel) {
  require(phi.sigma > -1.0, ErrorCode::ExponentTooSingular, "operator needs an exponent above -1");
  const RayGrid& grid = *phi.grid;
  const double theta = grid.ray().theta;
  const Complex u = grid.ray().direction();
  SingularFunction out{phi.grid, phi.sigma + shift, std::vector<Complex>(grid.size()), phi.lambda_hint};
  parallel_for(grid.size(), [&](std::size_t i) {
    const double ta = grid.nodes()[i];
    const Complex xa = ta * u;
    const Complex integral =
        integrate_unit(phi.sigma, diag, grid.t_min() / ta, op.quadrature, [&](double s, double v) {
          Complex k = kernel(xa, s * xa);
          if (diag != 0.0) k /= std::pow(v, diag);
          return k * grid.interpolate(phi.g, s * ta);
        });
    out.g[i] = ray_power(ta, theta, 1.0 - shift) * integral;
  });
  for (const Complex& v : out.g)
    require(std::isfinite(v.real()) && std::isfinite(v.imag()), ErrorCode::QuadratureFailure,
            "operator quadrature produced a non-finite value");
  return out;
}

}  // namespace

SingularFunction apply(const OperatorHandle& op, const SingularFunction& phi, Part part) {
  const SeparableKernel& k0 = op.kernel.k0;
  const auto& star = op.kernel.star;
  switch (part) {
    case Part::Separable:
      return integrate_nodes(op, phi, 0.0, 0.0, [&k0](Complex x, Complex xp) { return k0(x, xp); });
    case Part::Perturbation: {
      if (!star) {
        SingularFunction zero{phi.grid, phi.sigma + 1.0, std::vector<Complex>(phi.g.size()), phi.lambda_hint};
        return zero;
      }
      const double gamma = star->gamma;
      const double diag = is_integer(gamma) ? 0.0 : gamma;
      return integrate_nodes(op, phi, gamma, diag, star->k_star);
    }
    case Part::Full:
      if (!star) return apply(op, phi, Part::Separable);
      if (!is_integer(star->gamma))
        return combine(1.0, apply(op, phi, Part::Separable), 1.0, apply(op, phi, Part::Perturbation));
      return integrate_nodes(op, phi, 0.0, 0.0,
                             [&k0, &star](Complex x, Complex xp) { return k0(x, xp) + star->k_star(x, xp); });
  }
  return phi;
}

double beta_moment(double gamma, double sigma) {
  require(gamma > -1.0 && sigma > -1.0, ErrorCode::DomainError, "beta moment needs both arguments above -1");
  return std::exp(std::lgamma(gamma + 1.0) + std::lgamma(sigma + 1.0) - std::lgamma(sigma + gamma + 2.0));
}

std::optional<double> smoothing_order(const OperatorHandle& op, const SingularFunction& phi) {
  const SingularFunction out = apply(op, phi, Part::Perturbation);
  const RayGrid& grid = *out.grid;
  const std::size_t count = std::min(grid.size(), 2 * static_cast<std::size_t>(grid.nodes_per_panel()));
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t used = 0;
  for (std::size_t i = 0; i < count; ++i) {
    const double mag = std::abs(out.value_at_node(i));
    if (!(mag > 0.0)) continue;
    const double lx = std::log(grid.nodes()[i]), ly = std::log(mag);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++used;
  }
  if (used < 3) return std::nullopt;
  const double n = static_cast<double>(used);
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

ContractionEstimate contraction_estimate(const OperatorHandle& op, double rho, double lambda, double delta,
                                         const ContractionConfig& cfg) {
  const GridPtr& grid = op.grid;
  const double T = grid->T();
  const NormParams params{rho - 1.0, lambda};
  ContractionEstimate est{rho, lambda, 0.0, 0.0, 0.0, delta};
  const double lambda_eff = std::min(lambda, 300.0 / T);

  for (int trial = 0; trial < std::max(cfg.trials, 1); ++trial) {
    SingularFunction phi;
    if (trial == 0) {
      phi = sample_function(grid, rho - 1.0, [](double) { return Complex{1.0, 0.0}; });
    } else if (trial == 1) {
      phi = sample_function(grid, rho - 1.0, [&](double t) { return Complex{std::exp(lambda_eff * (t - delta)), 0.0}; });
    } else {
      std::mt19937_64 rng(cfg.seed + static_cast<std::uint64_t>(trial));
      std::uniform_real_distribution<double> unit(0.0, 1.0);
      std::vector<Complex> c(9);
      for (auto& ck : c) ck = std::polar(std::sqrt(unit(rng)), 2.0 * kPi * unit(rng));
      phi = sample_function(grid, rho - 1.0, [&](double t) {
        Complex acc{0.0, 0.0};
        for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * (t / T) + *it;
        return acc;
      });
    }
    const double log_in = log_weighted_norm(phi, params);
    if (!std::isfinite(log_in)) continue;
    const SingularFunction out = apply(op, phi, Part::Full);
    const double near = std::exp(log_weighted_norm(out, params, 0.0, delta) - log_in);
    const double far = std::exp(log_weighted_norm(out, params, delta, T) - log_in);
    est.near_factor = std::max(est.near_factor, near);
    est.far_factor = std::max(est.far_factor, far);
  }
  est.overall = std::max(est.near_factor, est.far_factor);
  return est;
}

LambdaSearch lambda_lower_search(const OperatorHandle& op, double rho, double kappa_target, double lambda_start,
                                 double delta, const ContractionConfig& cfg, int max_doublings) {
  require(kappa_target > 0.0 && kappa_target < 1.0, ErrorCode::PreconditionViolated, "kappa target must be in (0,1)");
  const double lambda_delta = op.kernel.star ? op.kernel.star->lambda_delta : 0.0;
  double lambda = std::max(lambda_start, lambda_delta + 1.0);
  if (lambda <= 0.0) lambda = 1.0;
  for (int d = 0; d <= max_doublings; ++d) {
    const ContractionEstimate est = contraction_estimate(op, rho, lambda, delta, cfg);
    if (est.overall <= kappa_target) return {lambda, est, d};
    lambda *= 2.0;
  }
  fail(ErrorCode::SearchExhausted, "no Lambda up to " + std::to_string(lambda / 2.0) + " reaches the target factor");
}

}  // namespace rsv
