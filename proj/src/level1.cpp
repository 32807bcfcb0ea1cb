#include "rsv/level1.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "rsv/error.hpp"

namespace rsv {

namespace {

constexpr double kRootTol = 1e-6;

Polynomial local_poly(const std::vector<Complex>& coeffs, Complex alpha) {
  // x -> C(-(alpha + x))
  return Polynomial(coeffs).compose_affine(-1.0, -alpha);
}

double angle_gap(double a, double b) {
  double d = std::fmod(std::abs(a - b), 2.0 * kPi);
  return std::min(d, 2.0 * kPi - d);
}

}  // namespace

ConditionReport validate_problem(const Level1Problem& prob) {
  ConditionReport rep{"level1", true, {}, std::nullopt, {}};
  auto flag = [&rep](const char* code) {
    rep.verified = false;
    rep.reasons.emplace_back(code);
  };
  const Polynomial P(prob.P), Q(prob.Q);
  const int d = P.degree();
  if (d < 1) {
    flag("DegreeMismatch");
    return rep;
  }
  rep.constants["degree"] = d;
  if (std::abs(P.leading() - 1.0) > 1e-12) flag("NotMonic");
  if (Q.degree() != d - 1) flag("DegreeMismatch");

  const auto roots = P.roots();
  bool double_root = false;
  for (std::size_t i = 0; i < roots.size(); ++i) {
    for (std::size_t j = i + 1; j < roots.size(); ++j)
      if (std::abs(roots[i] - roots[j]) <= kRootTol * std::max(1.0, std::abs(roots[i]))) double_root = true;
    if (std::abs(P.derivative()(roots[i])) <= 1e-8 * std::max(1.0, std::abs(P.leading()))) double_root = true;
  }
  if (double_root) flag("DoubleRoot");

  double qscale = 0.0;
  for (const auto& c : prob.Q) qscale = std::max(qscale, std::abs(c));
  if (!double_root) {
    for (const auto& r : roots)
      if (std::abs(Q(r)) <= 1e-12 * std::max(1.0, qscale)) {
        flag("QVanishesAtRoot");
        break;
      }
  }

  const double lambda = default_lambda_delta(prob);
  const std::size_t J = prob.R.size();
  for (std::size_t j = std::max<std::size_t>(1, J / 2); j < J; ++j) {
    if (std::pow(std::abs(prob.R[j]), 1.0 / static_cast<double>(j)) > lambda) {
      flag("SeriesGrowth");
      break;
    }
  }
  rep.constants["lambda_delta"] = lambda;
  return rep;
}

std::vector<SingularPoint> singular_points(const Level1Problem& prob) {
  const Polynomial P(prob.P), Q(prob.Q);
  const Polynomial dP = P.derivative();
  std::vector<SingularPoint> out;
  for (const Complex& r : P.roots()) {
    SingularPoint sp;
    sp.alpha = -r;
    const Complex slope = dP(r);
    require(std::abs(slope) > 0.0, ErrorCode::RootFindingFailure, "P' vanishes at a root");
    sp.tau_exact = Q(r) / slope;
    sp.admissible = std::abs(sp.tau_exact.imag()) <= 1e-10 && sp.tau_exact.real() > 1e-10;
    sp.tau = sp.tau_exact.real();
    out.push_back(sp);
  }
  std::sort(out.begin(), out.end(), [](const SingularPoint& a, const SingularPoint& b) {
    if (a.alpha.real() != b.alpha.real()) return a.alpha.real() < b.alpha.real();
    return a.alpha.imag() < b.alpha.imag();
  });
  return out;
}

double default_lambda_delta(const Level1Problem& prob) { return std::max(prob.A, 0.0) + 1.0; }

KernelPair build_kernels(const Level1Problem& prob, Complex alpha, double max_separation) {
  const Polynomial p = local_poly(prob.P, alpha);
  const Polynomial q = local_poly(prob.Q, alpha);
  KernelPair kp;
  kp.k0 = SeparableKernel{[p](Complex x) { return p(x); }, [q](Complex x) { return q(x); }, alpha};

  const double lambda = default_lambda_delta(prob);
  double C = 0.0;
  for (std::size_t j = 0; j < prob.R.size(); ++j)
    C = std::max(C, std::abs(prob.R[j]) / std::pow(lambda, static_cast<double>(j)));
  if (C == 0.0) return kp;

  // Keep terms until C lambda^j D^{j+1}/(j+1)! is negligible next to the sum.
  std::vector<Complex> terms;  // R_j / (j+1)!
  double bound_sum = 0.0, fact = 1.0;
  for (std::size_t j = 0; j < prob.R.size(); ++j) {
    fact *= static_cast<double>(j + 1);
    const double bound = C * std::pow(lambda, static_cast<double>(j)) * std::pow(max_separation, j + 1.0) / fact;
    if (j > 0 && bound < 1e-16 * bound_sum) break;
    bound_sum += bound;
    terms.push_back(prob.R[j] / fact);
  }
  kp.star = PerturbationKernel{[p, terms](Complex x, Complex xp) {
                                 const Complex dz = x - xp;
                                 Complex acc{0.0, 0.0};
                                 for (auto it = terms.rbegin(); it != terms.rend(); ++it) acc = acc * dz + *it;
                                 return -(acc * dz) / p(x);
                               },
                               1.0, lambda};
  return kp;
}

SeriesData series_data(const Level1Problem& prob, Complex alpha) {
  return {local_poly(prob.P, alpha).coefficients(), local_poly(prob.Q, alpha).coefficients(), prob.R};
}

double choose_ray(const Level1Problem& prob, Complex alpha, std::optional<double> requested_theta, double margin_deg) {
  const double margin = margin_deg * kPi / 180.0;
  std::vector<double> blocked;
  for (const auto& sp : singular_points(prob)) {
    if (std::abs(sp.alpha - alpha) <= kRootTol * std::max(1.0, std::abs(alpha))) continue;
    blocked.push_back(std::arg(sp.alpha - alpha));
  }
  auto clearance = [&](double theta) {
    double gap = kPi;
    for (double b : blocked) gap = std::min(gap, angle_gap(theta, b));
    return gap;
  };
  auto wrap = [](double t) {
    double r = std::fmod(t, 2.0 * kPi);
    return r < 0.0 ? r + 2.0 * kPi : r;
  };
  if (requested_theta) {
    if (clearance(*requested_theta) <= margin) {
      std::ostringstream os;
      os << "requested direction " << *requested_theta << " passes within " << margin_deg
         << " degrees of another singular point";
      fail(ErrorCode::NoAdmissibleRay, os.str());
    }
    return wrap(*requested_theta);
  }
  if (clearance(0.0) > margin) return 0.0;
  std::vector<double> dirs;
  for (double b : blocked) dirs.push_back(wrap(b));
  std::sort(dirs.begin(), dirs.end());
  double best = 0.0, best_gap = -1.0;
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    const double next = (i + 1 < dirs.size()) ? dirs[i + 1] : dirs[0] + 2.0 * kPi;
    const double mid = wrap(0.5 * (dirs[i] + next));
    const double gap = clearance(mid);
    if (gap > best_gap) {
      best_gap = gap;
      best = mid;
    }
  }
  if (best_gap <= margin) fail(ErrorCode::NoAdmissibleRay, "no direction clears the angular margin");
  return best;
}

std::vector<Complex> default_z_samples(double theta) {
  const Complex back = std::polar(1.0, -theta);
  return {2.0 * back, 4.0 * back, 8.0 * back};
}

double choose_length(const std::vector<Complex>& z, double theta, double accuracy) {
  constexpr double kLambdaEstimate = 0.25;
  double c_eff = std::numeric_limits<double>::infinity();
  for (const auto& zk : z) c_eff = std::min(c_eff, 0.5 * ((zk * std::polar(1.0, theta)).real() - kLambdaEstimate));
  require(c_eff > 0.0, ErrorCode::HalfPlaneViolation, "frequency samples too close to the half-plane boundary");
  return std::clamp(std::log(1.0 / (0.1 * accuracy)) / c_eff, 4.0, 64.0);
}

PositionSolution solve_at(const Level1Problem& prob, const SingularPoint& point, double theta,
                          const std::vector<Complex>& z, const Level1Config& cfg) {
  require(point.admissible, ErrorCode::PreconditionViolated, "singular point is not admissible");
  const double T = cfg.T > 0.0 ? cfg.T : choose_length(z, theta, cfg.accuracy);
  const Ray ray{point.alpha, theta, T};
  PositionSolution out;
  out.point = point;
  out.grid = build_ray_grid(ray, cfg.t_min_factor * T, cfg.ratio, cfg.nodes_per_panel);
  out.ray = out.grid->ray();
  out.kernel = build_kernels(prob, point.alpha, T);

  const double tau_est = estimate_tau(out.kernel.k0, out.ray.theta);
  ConditionReport tau_rep{"tau", std::abs(tau_est - point.tau) <= 1e-8 * std::max(1.0, point.tau),
                          {{"tau", point.tau}, {"estimate", tau_est}}, std::nullopt, {}};
  out.conditions.push_back(tau_rep);
  out.conditions.push_back(verify_reg_p(out.kernel.k0.p, point.alpha, out.ray.theta));
  out.conditions.push_back(verify_diag(out.kernel.k0, default_lambda_delta(prob), *out.grid));
  if (out.kernel.star) out.conditions.push_back(verify_diag(*out.kernel.star, out.kernel.star->lambda_delta, *out.grid));

  const HomogeneousProblem hp{out.kernel, point.tau, out.grid, cfg.quadrature};
  out.psi = solve_homogeneous(hp, cfg.solver);
  return out;
}

double ode_residual(const Level1Problem& prob, const SingularFunction& psi, Complex z, const LaplaceConfig& cfg) {
  const double theta = psi.grid->ray().theta;
  const int d = static_cast<int>(prob.P.size()) - 1;
  constexpr int M = 64;
  const double r = cauchy_radius(z, theta, psi.lambda_hint, cfg.margin);
  require(r > 0.0, ErrorCode::HalfPlaneViolation, "no room for a Cauchy circle at this z");
  std::vector<Complex> samples(M);
  for (int k = 0; k < M; ++k) samples[k] = laplace_value(psi, z + r * std::polar(1.0, 2.0 * kPi * k / M), cfg);
  auto derivative = [&](int n) {
    if (n == 0) return laplace_value(psi, z, cfg);
    Complex acc{0.0, 0.0};
    for (int k = 0; k < M; ++k) acc += samples[k] * std::polar(1.0, -2.0 * kPi * k * n / M);
    return std::tgamma(n + 1.0) * acc / (static_cast<double>(M) * std::pow(r, n));
  };
  std::vector<Complex> D(d + 1);
  for (int n = 0; n <= d; ++n) D[n] = derivative(n);
  Complex total{0.0, 0.0};
  for (int k = 0; k <= d; ++k) total += prob.P[k] * D[k];
  for (std::size_t k = 0; k < prob.Q.size() && static_cast<int>(k) <= d; ++k) total += prob.Q[k] * D[k] / z;
  Complex rsum{0.0, 0.0};
  for (auto it = prob.R.rbegin(); it != prob.R.rend(); ++it) rsum = rsum / z + *it;
  total += rsum * D[0] / (z * z);
  return std::abs(total) / std::abs(D[0]);
}

ResummedSolution borel_sum(const Level1Problem& prob, PositionSolution position, const std::vector<Complex>& z,
                           const Level1Config& cfg) {
  ResummedSolution out;
  out.Psi = laplace_transform(position.psi.f, z, cfg.laplace);
  for (const auto& zk : z) out.ode_residual = std::max(out.ode_residual, ode_residual(prob, position.psi.f, zk, cfg.laplace));
  out.volterra_residual = position.psi.volterra_residual;
  out.position = std::move(position);
  return out;
}

}  // namespace rsv
