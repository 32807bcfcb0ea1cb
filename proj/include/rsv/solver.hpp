#pragma once

#include <vector>

#include "rsv/grid.hpp"
#include "rsv/kernels.hpp"
#include "rsv/proto.hpp"
#include "rsv/volterra.hpp"

namespace rsv {

struct SolveConfig {
  double rho = 0.0;     // 0: tau + min(gamma, eps, 1)
  double lambda = 0.0;  // 0: lambda_lower_search
  double kappa_target = 0.9;
  double tol = 1e-10;
  int max_iter = 500;
  double delta = 0.0;  // near/far split; 0: radius from verify_sing
  ContractionConfig contraction;
};

struct Solution {
  SingularFunction f;
  SingularFunction f_star;
  int iterations = 0;
  double final_residual = 0.0;
  ContractionEstimate contraction;
  double rho = 0.0;
  double lambda = 0.0;
  double delta = 0.0;
  double tau = 0.0;
  Complex M{1.0, 0.0};             // leading constant of the raw prototype
  double volterra_residual = 0.0;  // ||f - V f|| / ||f|| in the (tau-1, Lambda) norm
  std::vector<double> history;     // successive differences in the (rho-1, Lambda) norm
};

/// Picard iteration f <- V f + g from f = g.
Solution solve_inhomogeneous(const OperatorHandle& op, const SingularFunction& g, const SolveConfig& cfg);

struct HomogeneousProblem {
  KernelPair kernel;
  double tau = 0.0;
  GridPtr grid;
  QuadratureConfig quadrature;
};

/// f = f0 + f*, with f0 the prototype normalized to unit leading coefficient
/// and f* = V* f0 + V f*.
Solution solve_homogeneous(const HomogeneousProblem& prob, const SolveConfig& cfg);

/// Taylor data at alpha in local coordinates plus the coefficients R_j of
/// k_R(x, x') = sum_j R_j (x - x')^{j+1} / (j+1)!.
struct SeriesData {
  std::vector<Complex> p;
  std::vector<Complex> q;
  std::vector<Complex> R;
};

/// c_0 = 1, ..., c_N for psi = sum c_n x^{tau-1+n} solving
/// p psi + int q psi + int k_R psi = 0.
std::vector<Complex> series_oracle(const SeriesData& data, double tau, int N);

/// Least-squares coefficients c_1..c_N of g(t) = sum c_n (t u)^n for a
/// solution with exponent tau - 1 and unit leading coefficient, using nodes
/// with t <= t_fit and `degree` basis terms.
std::vector<Complex> fit_series_coefficients(const SingularFunction& f, int N, double t_fit, int degree = 12);

struct SpanComparison {
  double weighted;      // max of t^{-sigma} e^{-Lambda t} |f - h| over the common span
  double relative_sup;  // max |f - h| / max |f| over the common span
};

SpanComparison compare_on_common_span(const SingularFunction& f, const SingularFunction& h, const NormParams& params);

struct UniquenessReport {
  double rho;
  double rho_alt;
  double lambda_alt;
  SpanComparison difference;
  bool agree;
};

/// Re-solves with rho_alt and compares in the coarser norm; MismatchDetected
/// when the difference exceeds 10 tol.
UniquenessReport uniqueness_probe(const HomogeneousProblem& prob, const Solution& sol, double rho_alt,
                                  const SolveConfig& cfg);

}  // namespace rsv
