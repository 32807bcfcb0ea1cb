#include "rsv/kernels.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <sstream>

#include "rsv/error.hpp"

namespace rsv {

namespace {

constexpr int kLevels = 6;

std::vector<double> logspace(double lo, double hi, int n) {
  std::vector<double> out(n);
  const double a = std::log(lo), b = std::log(hi);
  for (int i = 0; i < n; ++i) out[i] = std::exp(a + (b - a) * i / (n - 1));
  return out;
}

// True when the first three shell constants (ordered toward t -> 0) keep
// growing by more than the factor 1.5.
bool sustained_growth(const std::vector<double>& toward_zero) {
  if (toward_zero.size() < 4) return false;
  for (int i = 0; i < 3; ++i) {
    const double small_t = toward_zero[i], larger_t = toward_zero[i + 1];
    if (!(small_t > 1.5 * larger_t)) return false;
  }
  return true;
}

std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

}  // namespace

Complex extrapolate_to_zero(const std::vector<double>& h, const std::vector<Complex>& v, double* last_correction) {
  const std::size_t n = v.size();
  require(n >= 1 && h.size() == n, ErrorCode::PreconditionViolated, "extrapolation needs matching samples");
  std::vector<Complex> p = v;
  Complex previous = p.back();
  for (std::size_t m = 1; m < n; ++m) {
    if (m == n - 1) previous = p[1];
    for (std::size_t i = 0; i + m < n; ++i) p[i] = (h[i + m] * p[i] - h[i] * p[i + 1]) / (h[i + m] - h[i]);
  }
  if (n == 1) previous = p[0];
  if (last_correction) *last_correction = std::abs(p[0] - previous);
  return p[0];
}

double estimate_tau(const SeparableKernel& k0, double theta, double h) {
  const Complex u = std::polar(1.0, theta);
  std::vector<double> hs(kLevels);
  std::vector<Complex> vs(kLevels);
  for (int k = 0; k < kLevels; ++k) {
    hs[k] = std::ldexp(h, -k);
    const Complex x = hs[k] * u;
    vs[k] = x * k0(x, x);
    require(std::isfinite(vs[k].real()) && std::isfinite(vs[k].imag()), ErrorCode::NotRegularSingular,
            "diagonal residue samples are not finite");
  }
  double corr = 0.0;
  const Complex lim = extrapolate_to_zero(hs, vs, &corr);
  require(corr <= 1e-6 * std::max(1.0, std::abs(lim)), ErrorCode::NotRegularSingular,
          "diagonal residue does not settle (last correction " + fmt(corr) + ")");
  require(std::abs(lim.imag()) <= 1e-6, ErrorCode::NotRegularSingular,
          "diagonal residue is not real: " + fmt(lim.imag()));
  require(lim.real() > 0.0, ErrorCode::NotRegularSingular, "diagonal residue " + fmt(lim.real()) + " is not positive");
  return lim.real();
}

ConditionReport verify_sing(const SeparableKernel& k0, double tau, double sigma, const SampleRay& ray) {
  require(sigma > tau, ErrorCode::PreconditionViolated, "sing check needs sigma > tau");
  const Complex u = std::polar(1.0, ray.theta);
  const double floor = ray.t_floor > 0.0 ? ray.t_floor : std::ldexp(ray.T, -20);
  constexpr int kSamples = 24;

  Witness worst{0.0, 0.0, std::numeric_limits<double>::infinity()};
  for (double delta = 0.5 * ray.T; delta > 4.0 * floor; delta *= 0.5) {
    const auto ts = logspace(std::max(floor, std::ldexp(delta, -20)), delta * (1.0 - 1.0 / 1024), kSamples);
    bool ok = true;
    Witness local{0.0, 0.0, std::numeric_limits<double>::infinity()};
    for (int i = 0; i < kSamples && ok; ++i) {
      const Complex x = ts[i] * u;
      for (int j = 0; j <= i; ++j) {
        const double lhs = std::abs(k0(x, ts[j] * u)) * ts[i];
        const double margin = sigma - lhs;
        if (!(margin < local.margin)) continue;
        local = {ts[i], ts[j], margin};
        if (!(margin > 0.0)) {
          ok = false;
          break;
        }
      }
    }
    if (!ok) {
      if (local.margin < worst.margin || worst.t == 0.0) worst = local;
      continue;
    }
    // The diagonal difference must stay bounded as x -> 0.
    std::vector<double> diff(kSamples);
    double bound = 0.0;
    for (int i = 0; i < kSamples; ++i) {
      const Complex x = ts[i] * u;
      diff[i] = std::abs(k0(x, x) - tau / x);
      bound = std::max(bound, diff[i]);
    }
    if (sustained_growth(diff)) {
      worst = {ts[0], ts[0], -diff[0]};
      break;
    }
    ConditionReport rep{"sing", true, {{"tau", tau}, {"sigma", sigma}, {"delta", delta}, {"bound", bound}}, local, {}};
    return rep;
  }
  fail(ErrorCode::ConditionFailed, "sing: no radius works; worst pair t=" + fmt(worst.t) + " t'=" + fmt(worst.t_prime) +
                                       " margin=" + fmt(worst.margin));
}

ConditionReport verify_diag(const LocalKernel& kernel, double gamma, double lambda_delta, const RayGrid& grid) {
  const auto& nodes = grid.nodes();
  const Complex u = grid.ray().direction();
  const std::size_t n = grid.nodes_per_panel();
  const std::size_t K = grid.panels().size();
  std::vector<double> shell(K, 0.0);
  double C = 0.0;
  Witness wit{};
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const Complex x = nodes[i] * u;
    for (std::size_t j = 0; j < i; ++j) {
      const double sep = nodes[i] - nodes[j];
      const double lhs = std::abs(kernel(x, nodes[j] * u)) * nodes[i];
      const double ratio = lhs * std::exp(-lambda_delta * sep) / (gamma == 0.0 ? 1.0 : std::pow(sep, gamma));
      if (!std::isfinite(ratio))
        fail(ErrorCode::ConditionFailed, "diag: non-finite kernel at t=" + fmt(nodes[i]) + " t'=" + fmt(nodes[j]));
      shell[i / n] = std::max(shell[i / n], ratio);
      if (ratio > C) {
        C = ratio;
        wit = {nodes[i], nodes[j], ratio};
      }
    }
  }
  if (sustained_growth(shell))
    fail(ErrorCode::ConditionFailed, "diag: bound grows without limit toward the singular point (shell constants " +
                                         fmt(shell[0]) + ", " + fmt(shell[1]) + ", " + fmt(shell[2]) + ")");
  return {gamma == 0.0 ? "diag0" : "diag_star", true, {{"C", C}, {"lambda_delta", lambda_delta}, {"gamma", gamma}}, wit, {}};
}

ConditionReport verify_diag(const SeparableKernel& k0, double lambda_delta, const RayGrid& grid) {
  return verify_diag([&k0](Complex x, Complex xp) { return k0(x, xp); }, 0.0, lambda_delta, grid);
}

ConditionReport verify_diag(const PerturbationKernel& ks, double lambda_delta, const RayGrid& grid) {
  return verify_diag(ks.k_star, ks.gamma, lambda_delta, grid);
}

double estimate_gamma(const LocalKernel& k_star, double theta, double scale) {
  // Per base point the fit is |k*(x, x - s u)| ~ c s^gamma; pooled with
  // separate intercepts so the size of k* away from the diagonal drops out.
  const Complex u = std::polar(1.0, theta);
  double sxy = 0, sxx = 0;
  int count = 0;
  bool any_nonzero = false;
  for (double base : {0.25, 0.125, 0.0625}) {
    const double ta = base * scale;
    const Complex x = ta * u;
    std::vector<double> lx, ly;
    for (int k = 0; k <= 6; ++k) {
      const double sep = std::ldexp(ta / 8.0, -k);
      const double mag = std::abs(k_star(x, x - sep * u));
      if (mag == 0.0) continue;
      any_nonzero = true;
      lx.push_back(std::log(sep));
      ly.push_back(std::log(mag));
    }
    if (lx.size() < 2) continue;
    const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / lx.size();
    const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / ly.size();
    for (std::size_t i = 0; i < lx.size(); ++i) {
      sxy += (lx[i] - mx) * (ly[i] - my);
      sxx += (lx[i] - mx) * (lx[i] - mx);
    }
    count += static_cast<int>(lx.size());
  }
  if (!any_nonzero) return std::numeric_limits<double>::infinity();
  require(count >= 3 && sxx > 0.0, ErrorCode::NoVanishing, "too few nonzero kernel samples near the diagonal");
  const double slope = sxy / sxx;
  require(std::isfinite(slope) && slope >= 0.05, ErrorCode::NoVanishing,
          "kernel does not vanish on the diagonal (fitted order " + fmt(slope) + ")");
  return slope;
}

ConditionReport verify_reg_p(const LocalFn& p, Complex alpha, double theta, double h) {
  const Complex u = std::polar(1.0, theta);
  std::vector<double> hs(kLevels);
  std::vector<Complex> vs(kLevels);
  for (int k = 0; k < kLevels; ++k) {
    hs[k] = std::ldexp(h, -k);
    vs[k] = p(hs[k] * u) / (hs[k] * u);
  }
  const Complex B = extrapolate_to_zero(hs, vs);
  require(std::abs(B) >= 1e-8, ErrorCode::DegenerateRoot,
          "p has a degenerate root at alpha = (" + fmt(alpha.real()) + ", " + fmt(alpha.imag()) + ")");
  std::vector<double> rem(kLevels);
  bool exact = true;
  for (int k = 0; k < kLevels; ++k) {
    rem[k] = std::abs(p(hs[k] * u) - B * hs[k] * u);
    if (rem[k] > 1e-13 * std::abs(B) * hs[k]) exact = false;
  }
  double eps = 1.0;
  if (!exact) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int k = 0; k < kLevels; ++k) {
      const double lx = std::log(hs[k]), ly = std::log(std::max(rem[k], 1e-300));
      sx += lx;
      sy += ly;
      sxx += lx * lx;
      sxy += lx * ly;
    }
    const double slope = (kLevels * sxy - sx * sy) / (kLevels * sxx - sx * sx);
    eps = slope - 1.0;
  }
  ConditionReport rep{"reg_p", eps > 0.0, {{"B_re", B.real()}, {"B_im", B.imag()}, {"epsilon", eps}}, std::nullopt, {}};
  if (exact) rep.constants["exact"] = 1.0;
  if (!rep.verified) rep.reasons.push_back("remainder does not vanish faster than linearly");
  return rep;
}

}  // namespace rsv
