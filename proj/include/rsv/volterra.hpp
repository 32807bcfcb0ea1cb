#pragma once

#include <cstdint>
#include <optional>

#include "rsv/grid.hpp"
#include "rsv/kernels.hpp"
#include "rsv/quadrature.hpp"

namespace rsv {

struct OperatorHandle {
  KernelPair kernel;
  QuadratureConfig quadrature;
  GridPtr grid;
};

enum class Part {
  Separable,     // V0
  Perturbation,  // V*
  Full,          // V0 + V*
};

/// [V phi](a) = int_alpha^{zeta(a)} k(a, a') phi(a') dzeta(a') on the straight
/// path, resampled onto phi's grid. The output exponent is sigma + gamma for
/// the perturbation part alone and sigma otherwise.
SingularFunction apply(const OperatorHandle& op, const SingularFunction& phi, Part part = Part::Full);

/// Gamma(gamma+1) Gamma(sigma+1) / Gamma(sigma+gamma+2).
double beta_moment(double gamma, double sigma);

/// Log-log slope of |V* phi| over the first panels; empty when V* phi == 0.
std::optional<double> smoothing_order(const OperatorHandle& op, const SingularFunction& phi);

struct ContractionEstimate {
  double rho = 0.0;
  double lambda = 0.0;
  double near_factor = 0.0;
  double far_factor = 0.0;
  double overall = 0.0;
  double delta_split = 0.0;
};

struct ContractionConfig {
  int trials = 8;
  std::uint64_t seed = 0;
};

/// Largest observed ratio ||V phi||_{rho-1,Lambda} / ||phi||_{rho-1,Lambda}
/// over trial functions, with the output sup split at t = delta.
ContractionEstimate contraction_estimate(const OperatorHandle& op, double rho, double lambda, double delta,
                                         const ContractionConfig& cfg = {});

struct LambdaSearch {
  double lambda = 0.0;
  ContractionEstimate estimate;
  int doublings = 0;
};

/// Doubles Lambda from max(lambda_start, lambda_delta + 1) until the measured
/// contraction factor is at most kappa_target.
LambdaSearch lambda_lower_search(const OperatorHandle& op, double rho, double kappa_target, double lambda_start,
                                 double delta, const ContractionConfig& cfg = {}, int max_doublings = 40);

}  // namespace rsv
