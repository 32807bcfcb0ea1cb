#include "rsv/proto.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "rsv/error.hpp"
#include "rsv/parallel.hpp"

namespace rsv {

namespace {

// eta(t) = int_0^t r(t' u) u dt' with r = q/p + tau/x, checked against a
// higher-order rule.
Complex remainder_integral(const SeparableKernel& k0, double tau, Complex u, double t, double s_floor,
                           const QuadratureConfig& quad) {
  const Complex x = t * u;
  auto r = [&](double s, double) {
    const Complex xs = s * x;
    return k0.q(xs) / k0.p(xs) + tau / xs;
  };
  QuadratureConfig fine = quad;
  fine.order = quad.order + 8;
  const Complex coarse_val = x * integrate_unit(0.0, 0.0, s_floor, quad, r);
  const Complex fine_val = x * integrate_unit(0.0, 0.0, s_floor, fine, r);
  if (std::abs(fine_val - coarse_val) > 1e-10 * std::max(1.0, std::abs(fine_val))) {
    std::ostringstream os;
    os << "remainder integral unresolved at t=" << t << " (difference " << std::abs(fine_val - coarse_val) << ")";
    fail(ErrorCode::QuadratureFailure, os.str());
  }
  return fine_val;
}

}  // namespace

SingularFunction PrototypeSolution::normalized() const {
  SingularFunction out = f0;
  if (M) {
    for (auto& v : out.g) v /= *M;
  }
  return out;
}

PrototypeSolution compute_prototype(const SeparableKernel& k0, double tau, const GridPtr& grid, double base_t,
                                    const QuadratureConfig& quad) {
  require(base_t >= grid->t_min() && base_t <= grid->T(), ErrorCode::OutOfRange, "base point outside the grid span");
  const Complex u = grid->ray().direction();
  const double theta = grid->ray().theta;
  const double t_min = grid->t_min();
  const Complex eta_b = remainder_integral(k0, tau, u, base_t, t_min / base_t, quad);
  // (t u)^{1 - tau} t^tau t_b^{-tau} / p = t u^{1-tau} t_b^{-tau} / p.
  const Complex scale = std::pow(base_t, -tau) * ray_phase(theta, -tau);

  SingularFunction f0{grid, tau - 1.0, std::vector<Complex>(grid->size()), 0.0};
  parallel_for(grid->size(), [&](std::size_t i) {
    const double t = grid->nodes()[i];
    const Complex x = t * u;
    const Complex eta = remainder_integral(k0, tau, u, t, t_min / t, quad);
    f0.g[i] = scale * (x / k0.p(x)) * std::exp(-(eta - eta_b));
  });
  for (const auto& v : f0.g)
    require(std::isfinite(v.real()) && std::isfinite(v.imag()), ErrorCode::QuadratureFailure,
            "prototype is not finite on the grid");
  f0.lambda_hint = estimate_growth_rate(f0);

  PrototypeSolution proto{std::move(f0), base_t, tau, std::nullopt};
  try {
    proto.M = estimate_leading_constant(proto.f0).M;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NoLimit) throw;
  }
  return proto;
}

double verify_fixed_point(const SingularFunction& f0, const OperatorHandle& op, double tau, double lambda) {
  const NormParams params{tau - 1.0, lambda};
  const SingularFunction image = apply(op, f0, Part::Separable);
  const SingularFunction diff = combine(1.0, f0, -1.0, image);
  const double denom = log_weighted_norm(f0, params);
  if (!std::isfinite(denom)) return 0.0;
  return std::exp(log_weighted_norm(diff, params) - denom);
}

double verify_fixed_point(const PrototypeSolution& proto, const OperatorHandle& op, double lambda) {
  return verify_fixed_point(proto.f0, op, proto.tau, lambda);
}

ProportionalityReport proportionality(const SingularFunction& f, const SingularFunction& h, double threshold) {
  const SingularFunction a = reexpress(f, h.sigma);
  std::vector<Complex> ratios;
  ratios.reserve(a.g.size());
  Complex mean{0.0, 0.0};
  for (std::size_t i = 0; i < a.g.size(); ++i) {
    require(std::abs(h.g[i]) > 0.0, ErrorCode::NotProportional, "reference function vanishes at a node");
    ratios.push_back(a.g[i] / h.g[i]);
    mean += ratios.back();
  }
  mean /= static_cast<double>(ratios.size());
  double var = 0.0;
  for (const auto& r : ratios) var += std::norm(r - mean);
  const double dev = std::sqrt(var / static_cast<double>(ratios.size())) / std::abs(mean);
  if (!(dev <= threshold)) {
    std::ostringstream os;
    os << "relative deviation " << dev << " exceeds " << threshold;
    fail(ErrorCode::NotProportional, os.str());
  }
  return {mean, dev};
}

ProportionalityReport base_point_invariance(const SeparableKernel& k0, double tau, const GridPtr& grid, double t_b1,
                                            double t_b2, const QuadratureConfig& quad) {
  const auto p1 = compute_prototype(k0, tau, grid, t_b1, quad);
  const auto p2 = compute_prototype(k0, tau, grid, t_b2, quad);
  return proportionality(p1.f0, p2.f0);
}

LeadingConstant estimate_leading_constant(const SingularFunction& f0) {
  const RayGrid& grid = *f0.grid;
  std::vector<double> hs;
  std::vector<Complex> gs;
  for (int k = 0; k < 4; ++k) {
    const double t = std::ldexp(grid.t_min(), k);
    if (t > grid.T()) break;
    hs.push_back(t);
    gs.push_back(grid.interpolate(f0.g, t));
  }
  double corr = 0.0;
  const Complex M = extrapolate_to_zero(hs, gs, &corr);
  if (!(std::abs(M) > 0.0) || !(corr <= 1e-3 * std::abs(M))) {
    std::ostringstream os;
    os << "leading coefficient does not settle (|M| = " << std::abs(M) << ", correction " << corr << ")";
    fail(ErrorCode::NoLimit, os.str());
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (std::size_t k = 0; k < hs.size(); ++k) {
    const double d = std::abs(gs[k] - M);
    if (!(d > 1e-15 * std::abs(M))) continue;
    sx += std::log(hs[k]);
    sy += std::log(d);
    sxx += std::log(hs[k]) * std::log(hs[k]);
    sxy += std::log(hs[k]) * std::log(d);
    ++n;
  }
  const double rate = n >= 2 ? (n * sxy - sx * sy) / (n * sxx - sx * sx) : std::numeric_limits<double>::quiet_NaN();
  return {M, corr, rate};
}

LeadingConstant estimate_leading_constant(const PrototypeSolution& proto) {
  return estimate_leading_constant(proto.f0);
}

}  // namespace rsv
