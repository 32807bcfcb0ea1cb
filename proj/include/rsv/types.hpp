#pragma once

#include <cmath>
#include <complex>
#include <numbers>

namespace rsv {

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr Complex kI{0.0, 1.0};

/// e^{i sigma theta}: the phase of (t e^{i theta})^sigma under the ray branch
/// convention (t e^{i theta})^sigma := t^sigma e^{i sigma theta}.
inline Complex ray_phase(double theta, double sigma) { return std::polar(1.0, sigma * theta); }

/// (t e^{i theta})^sigma with the ray branch convention, t > 0.
inline Complex ray_power(double t, double theta, double sigma) {
  return std::pow(t, sigma) * ray_phase(theta, sigma);
}

/// z^p on the branch attached to the ray direction theta: arg(z e^{i theta}) is
/// taken in (-pi, pi] and arg z = arg(z e^{i theta}) - theta. This is the branch
/// for which the ray Laplace transform of (zeta - alpha)^s equals
/// Gamma(s+1) e^{-alpha z} z^{-s-1}.
inline Complex frequency_power(Complex z, double theta, double p) {
  const Complex w = z * std::polar(1.0, theta);
  return std::pow(w, p) * ray_phase(theta, -p);
}

}  // namespace rsv
