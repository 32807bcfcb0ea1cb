#pragma once

#include <functional>
#include <vector>

#include "rsv/grid.hpp"
#include "rsv/quadrature.hpp"

namespace rsv {

/// Riemann-Liouville integral of order nu based at alpha, along the ray.
SingularFunction fractional_integral(double nu, const SingularFunction& phi, const QuadratureConfig& quad = {});

struct LaplaceResult {
  double theta = 0.0;
  Complex alpha{0.0, 0.0};
  double lambda = 0.0;  // growth rate used for the half-plane and the tail
  double T = 0.0;
  std::vector<Complex> z;
  std::vector<Complex> phi;
  std::vector<double> tail_bound;
};

struct LaplaceConfig {
  double margin = 0.1;
  double accuracy = 1e-6;  // tail_bound / |Phi| above this raises TailTooLarge
  QuadratureConfig quadrature;
};

/// Phi(z) = int_0^T e^{-z zeta} phi(zeta) dzeta along the ray, with an
/// analytic bound on the discarded tail beyond T.
LaplaceResult laplace_transform(const SingularFunction& phi, const std::vector<Complex>& z,
                                const LaplaceConfig& cfg = {});

/// Single value with its tail bound; no accuracy check.
Complex laplace_value(const SingularFunction& phi, Complex z, const LaplaceConfig& cfg, double* tail = nullptr);

/// n-th derivative of F at z0 from M samples on a circle of radius r.
Complex cauchy_derivative(const std::function<Complex(Complex)>& F, Complex z0, double r, int n, int M = 64);

/// Half the distance from z to the boundary Re(z e^{i theta}) = lambda + margin.
double cauchy_radius(Complex z, double theta, double lambda, double margin);

struct DictionaryReport {
  double fractional_mismatch = 0.0;   // max |L d^{-nu} phi - z^{-nu} L phi| / |z^{-nu} L phi|
  double multiplication_mismatch = 0.0;  // max |L(zeta^n phi) - (-d/dz)^n L phi| / |L(zeta^n phi)|
  double tail = 0.0;                  // largest relative tail bound involved
};

DictionaryReport verify_dictionary(const SingularFunction& phi, double nu, int n, const std::vector<Complex>& z,
                                   const LaplaceConfig& cfg = {});

}  // namespace rsv
