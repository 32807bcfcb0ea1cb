#pragma once

#include <cmath>

#include "rsv/grid.hpp"
#include "rsv/kernels.hpp"
#include "rsv/volterra.hpp"

namespace rsvtest {

using rsv::Complex;

// k0 = tau/(zeta - 1): p = -(zeta - 1), q = tau, in local coordinates x = zeta - 1.
inline rsv::SeparableKernel toy_k0(double tau = 0.5) {
  return {[](Complex x) { return -x; }, [tau](Complex) { return Complex{tau, 0.0}; }, Complex{1.0, 0.0}};
}

// k* = -r0 (x - x') / p(x) with the same p.
inline rsv::PerturbationKernel toy_star(double r0, double lambda_delta = 1.0) {
  return {[r0](Complex x, Complex xp) { return r0 * (x - xp) / x; }, 1.0, lambda_delta};
}

// p = (zeta - 1)(zeta - 2), q = 1.5 - zeta around alpha = 1.
inline rsv::SeparableKernel two_root_k0() {
  return {[](Complex x) { return x * (x - 1.0); }, [](Complex x) { return 0.5 - x; }, Complex{1.0, 0.0}};
}

inline rsv::GridPtr toy_grid(double T = 16.0, double theta = 0.0, int n = 16, Complex alpha = {1.0, 0.0}) {
  return rsv::build_ray_grid({alpha, theta, T}, std::ldexp(T, -20), 2.0, n);
}

inline double rel(Complex a, Complex b) { return std::abs(a - b) / std::abs(b); }

}  // namespace rsvtest
