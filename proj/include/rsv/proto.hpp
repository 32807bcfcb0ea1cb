#pragma once

#include <optional>

#include "rsv/grid.hpp"
#include "rsv/kernels.hpp"
#include "rsv/quadrature.hpp"
#include "rsv/volterra.hpp"

namespace rsv {

/// f0 = (1/p) exp(-int_b^a q/p), stored with exponent tau - 1 exactly as
/// computed from the base point; `M` is its limit f0 / (t u)^{tau-1} at the
/// singular point when available.
struct PrototypeSolution {
  SingularFunction f0;
  double base_t = 0.0;
  double tau = 0.0;
  std::optional<Complex> M;

  /// f0 / M, i.e. the representative with unit leading coefficient.
  SingularFunction normalized() const;
};

/// The logarithmic part of -int q/p is taken in closed form; only the bounded
/// remainder q/p + tau/x is integrated numerically.
PrototypeSolution compute_prototype(const SeparableKernel& k0, double tau, const GridPtr& grid, double base_t,
                                    const QuadratureConfig& quad = {});

/// ||f0 - V0 f0|| / ||f0|| in the (tau - 1, lambda) norm.
double verify_fixed_point(const SingularFunction& f0, const OperatorHandle& op, double tau, double lambda);
double verify_fixed_point(const PrototypeSolution& proto, const OperatorHandle& op, double lambda);

struct ProportionalityReport {
  Complex ratio;
  double relative_deviation;
};

/// Constant c with f = c h pointwise; NotProportional when the relative
/// spread of f/h exceeds `threshold`.
ProportionalityReport proportionality(const SingularFunction& f, const SingularFunction& h, double threshold = 1e-8);

/// f0 built at t_b1 divided by f0 built at t_b2.
ProportionalityReport base_point_invariance(const SeparableKernel& k0, double tau, const GridPtr& grid, double t_b1,
                                            double t_b2, const QuadratureConfig& quad = {});

struct LeadingConstant {
  Complex M;
  double last_correction;
  double rate;  // fitted exponent of |g(t) - M|; NaN when g is constant
};

/// Extrapolates g(t) = f0 / (t u)^{tau-1} to t = 0.
LeadingConstant estimate_leading_constant(const SingularFunction& f0);
LeadingConstant estimate_leading_constant(const PrototypeSolution& proto);

}  // namespace rsv
