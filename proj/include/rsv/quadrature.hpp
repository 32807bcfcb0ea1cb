#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "rsv/types.hpp"

namespace rsv {

/// Nodes and weights on [-1, 1] for the weight (1-x)^a (1+x)^b.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  double a = 0.0;
  double b = 0.0;
};

/// Gauss-Jacobi rule with m points via Golub-Welsch. Rules are cached; the
/// returned reference stays valid for the life of the program.
const QuadratureRule& gauss_jacobi(int m, double a, double b);

inline const QuadratureRule& gauss_legendre(int m) { return gauss_jacobi(m, 0.0, 0.0); }

enum class EndpointRule {
  GaussJacobi,    // endpoint singular factors carried by Jacobi weights
  GaussLegendre,  // singular factors evaluated pointwise (for comparison only)
};

struct QuadratureConfig {
  int order = 20;
  EndpointRule rule = EndpointRule::GaussJacobi;
};

EndpointRule parse_endpoint_rule(const std::string& name);
std::string to_string(EndpointRule rule);

/// Integral over s in (0, 1] of s^sigma (1-s)^diag F(s).
///
/// The interval is split into [1/2, 1] (weight (1-s)^diag), dyadic segments
/// [2^{-k-1}, 2^{-k}] for k = 1..K, and a core [0, 2^{-K-1}] (weight s^sigma),
/// where K is the smallest depth with 2^{-K-1} <= s_floor. F must be smooth on
/// each segment; F receives s and 1-s (the latter computed without
/// cancellation near s = 1).
template <class F>
Complex integrate_unit(double sigma, double diag, double s_floor, const QuadratureConfig& cfg,
                       F&& integrand) {
  const bool jacobi = cfg.rule == EndpointRule::GaussJacobi;
  const int m = cfg.order;
  int depth = 0;
  while (std::ldexp(1.0, -(depth + 1)) > s_floor && depth < 1000) ++depth;
  Complex total{0.0, 0.0};

  // Diagonal segment [1/2, 1] in the variable v = 1 - s in [0, 1/2].
  {
    const auto& rule = jacobi ? gauss_jacobi(m, 0.0, diag) : gauss_legendre(m);
    Complex acc{0.0, 0.0};
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const double y = 0.5 * (1.0 + rule.nodes[i]);  // in [0, 1]
      const double v = 0.5 * y;
      const double s = 1.0 - v;
      double w = std::pow(s, sigma);
      if (!jacobi) w *= std::pow(v, diag);
      acc += rule.weights[i] * w * integrand(s, v);
    }
    // v = y/2, dv = dy/2 and the Jacobi weight is y^diag on [0,1] = ((1+x)/2)^diag.
    total += acc * (jacobi ? std::ldexp(1.0, -1) * std::pow(0.5, diag) * std::pow(0.5, diag + 1.0)
                           : 0.25);
  }

  const auto& plain = gauss_legendre(m);
  for (int k = 1; k <= depth; ++k) {
    const double lo = std::ldexp(1.0, -(k + 1));
    const double hi = 2.0 * lo;
    const double half = 0.5 * (hi - lo);
    const double mid = 0.5 * (hi + lo);
    Complex acc{0.0, 0.0};
    for (std::size_t i = 0; i < plain.nodes.size(); ++i) {
      const double s = mid + half * plain.nodes[i];
      const double v = 1.0 - s;
      acc += plain.weights[i] * std::pow(s, sigma) * std::pow(v, diag) * integrand(s, v);
    }
    total += half * acc;
  }

  // Core [0, c] with s = c x, x in (0, 1].
  {
    const double c = std::ldexp(1.0, -(depth + 1));
    const auto& rule = jacobi ? gauss_jacobi(m, 0.0, sigma) : gauss_legendre(m);
    Complex acc{0.0, 0.0};
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const double x = 0.5 * (1.0 + rule.nodes[i]);
      const double s = c * x;
      const double v = 1.0 - s;
      double w = std::pow(v, diag);
      if (!jacobi) w *= std::pow(s, sigma);
      acc += rule.weights[i] * w * integrand(s, v);
    }
    // int_0^c s^sigma h ds = c^{sigma+1} int_0^1 x^sigma h(cx) dx
    //                      = c^{sigma+1} 2^{-(sigma+1)} sum w_i h.
    const double scale = jacobi ? std::pow(c, sigma + 1.0) * std::pow(0.5, sigma + 1.0) : 0.5 * c;
    total += scale * acc;
  }
  return total;
}

}  // namespace rsv
