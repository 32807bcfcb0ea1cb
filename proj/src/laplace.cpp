#include "rsv/laplace.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "rsv/error.hpp"
#include "rsv/parallel.hpp"

namespace rsv {

SingularFunction fractional_integral(double nu, const SingularFunction& phi, const QuadratureConfig& quad) {
  require(nu > 0.0, ErrorCode::DomainError, "fractional order must be positive");
  require(phi.sigma > -1.0, ErrorCode::DomainError, "fractional integral needs an exponent above -1");
  const RayGrid& grid = *phi.grid;
  const double inv_gamma = 1.0 / std::tgamma(nu);
  const double diag = nu - 1.0;
  SingularFunction out{phi.grid, phi.sigma + nu, std::vector<Complex>(grid.size()), phi.lambda_hint};
  parallel_for(grid.size(), [&](std::size_t i) {
    const double t = grid.nodes()[i];
    out.g[i] = inv_gamma * integrate_unit(phi.sigma, diag, grid.t_min() / t, quad,
                                          [&](double s, double) { return grid.interpolate(phi.g, s * t); });
  });
  return out;
}

double cauchy_radius(Complex z, double theta, double lambda, double margin) {
  return 0.5 * ((z * std::polar(1.0, theta)).real() - lambda - margin);
}

Complex laplace_value(const SingularFunction& phi, Complex z, const LaplaceConfig& cfg, double* tail) {
  require(phi.sigma > -1.0, ErrorCode::ExponentTooSingular, "Laplace transform needs an exponent above -1");
  const RayGrid& grid = *phi.grid;
  const double theta = grid.ray().theta;
  const Complex u = grid.ray().direction();
  const Complex zu = z * u;
  const double sigma = phi.sigma;
  const int m = cfg.quadrature.order;

  Complex acc{0.0, 0.0};
  {
    const double c = grid.t_min();
    const auto& rule = gauss_jacobi(m, 0.0, sigma);
    Complex core{0.0, 0.0};
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const double t = 0.5 * c * (1.0 + rule.nodes[i]);
      core += rule.weights[i] * std::exp(-zu * t) * grid.interpolate(phi.g, t);
    }
    acc += std::pow(c, sigma + 1.0) * std::pow(0.5, sigma + 1.0) * core;
  }
  const auto& gl = gauss_legendre(m);
  const double zmag = std::abs(zu);
  for (const auto& p : grid.panels()) {
    const int pieces = std::max(1, static_cast<int>(std::ceil(zmag * (p.hi - p.lo) / 2.0)));
    const double len = (p.hi - p.lo) / pieces;
    for (int k = 0; k < pieces; ++k) {
      const double lo = p.lo + k * len;
      const double half = 0.5 * len, mid = lo + half;
      Complex seg{0.0, 0.0};
      for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
        const double t = mid + half * gl.nodes[i];
        seg += gl.weights[i] * std::pow(t, sigma) * std::exp(-zu * t) * grid.interpolate(phi.g, t);
      }
      acc += half * seg;
    }
  }
  const Complex prefactor = std::exp(-z * grid.ray().alpha) * u * ray_phase(theta, sigma);

  if (tail) {
    const double T = grid.T();
    const double lam = phi.lambda_hint;
    const double c = zu.real() - lam;
    const double norm = weighted_norm(phi, {sigma, lam});
    double denom = c;
    if (sigma > 0.0) denom = c - sigma / T;
    *tail = (c > 0.0 && denom > 0.0)
                ? std::exp(-(z * grid.ray().alpha).real()) * norm * std::pow(T, sigma) * std::exp(-c * T) / denom
                : std::numeric_limits<double>::infinity();
  }
  return prefactor * acc;
}

LaplaceResult laplace_transform(const SingularFunction& phi, const std::vector<Complex>& z, const LaplaceConfig& cfg) {
  const Ray& ray = phi.grid->ray();
  LaplaceResult res{ray.theta, ray.alpha, phi.lambda_hint, ray.T, z, std::vector<Complex>(z.size()),
                    std::vector<double>(z.size())};
  for (const Complex& zk : z) {
    const double re = (zk * ray.direction()).real();
    if (re < phi.lambda_hint + cfg.margin) {
      std::ostringstream os;
      os << "z = (" << zk.real() << ", " << zk.imag() << ") lies outside the half-plane Re(z e^{i theta}) > "
         << phi.lambda_hint + cfg.margin;
      fail(ErrorCode::HalfPlaneViolation, os.str());
    }
  }
  parallel_for(z.size(), [&](std::size_t k) { res.phi[k] = laplace_value(phi, z[k], cfg, &res.tail_bound[k]); });
  for (std::size_t k = 0; k < z.size(); ++k) {
    if (!(res.tail_bound[k] <= cfg.accuracy * std::abs(res.phi[k]))) {
      std::ostringstream os;
      os << "tail bound " << res.tail_bound[k] << " at z = (" << z[k].real() << ", " << z[k].imag()
         << ") exceeds the requested accuracy; lengthen the ray";
      fail(ErrorCode::TailTooLarge, os.str());
    }
  }
  return res;
}

Complex cauchy_derivative(const std::function<Complex(Complex)>& F, Complex z0, double r, int n, int M) {
  require(r > 0.0 && M > n, ErrorCode::PreconditionViolated, "Cauchy circle needs r > 0 and M > n");
  Complex acc{0.0, 0.0};
  for (int k = 0; k < M; ++k) {
    const Complex w = std::polar(1.0, 2.0 * kPi * k / M);
    acc += F(z0 + r * w) * std::pow(w, -n);
  }
  return std::tgamma(n + 1.0) * acc / (static_cast<double>(M) * std::pow(r, n));
}

DictionaryReport verify_dictionary(const SingularFunction& phi, double nu, int n, const std::vector<Complex>& z,
                                   const LaplaceConfig& cfg) {
  const Ray& ray = phi.grid->ray();
  DictionaryReport rep;
  const SingularFunction integral = fractional_integral(nu, phi, cfg.quadrature);
  SingularFunction times = phi;
  for (std::size_t i = 0; i < times.g.size(); ++i) times.g[i] *= std::pow(ray.point(phi.grid->nodes()[i]), n);
  times.lambda_hint = phi.lambda_hint;

  for (const Complex& zk : z) {
    double t_phi = 0.0, t_int = 0.0, t_times = 0.0;
    const Complex L = laplace_value(phi, zk, cfg, &t_phi);
    const Complex lhs = laplace_value(integral, zk, cfg, &t_int);
    const Complex rhs = frequency_power(zk, ray.theta, -nu) * L;
    rep.fractional_mismatch = std::max(rep.fractional_mismatch, std::abs(lhs - rhs) / std::abs(rhs));
    rep.tail = std::max({rep.tail, t_phi / std::abs(L), t_int / std::abs(lhs)});

    const Complex mult = laplace_value(times, zk, cfg, &t_times);
    const double r = cauchy_radius(zk, ray.theta, phi.lambda_hint, cfg.margin);
    const Complex deriv = cauchy_derivative([&](Complex w) { return laplace_value(phi, w, cfg); }, zk, r, n);
    const Complex expected = ((n % 2) ? -1.0 : 1.0) * deriv;
    rep.multiplication_mismatch = std::max(rep.multiplication_mismatch, std::abs(mult - expected) / std::abs(mult));
    double t_edge = 0.0;
    laplace_value(phi, zk - r * std::conj(ray.direction()), cfg, &t_edge);
    rep.tail = std::max({rep.tail, t_times / std::abs(mult), t_edge / std::abs(L)});
  }
  return rep;
}

}  // namespace rsv
