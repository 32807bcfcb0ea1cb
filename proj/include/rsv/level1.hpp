#pragma once

#include <optional>
#include <vector>

#include "rsv/kernels.hpp"
#include "rsv/laplace.hpp"
#include "rsv/polynomial.hpp"
#include "rsv/solver.hpp"

namespace rsv {

/// P(d/dz) + Q(d/dz)/z + R(1/z)/z^2 with ascending coefficients and
/// R(w) = sum_j R_j w^j.
struct Level1Problem {
  std::vector<Complex> P;
  std::vector<Complex> Q;
  std::vector<Complex> R;
  double A = 0.0;
};

struct SingularPoint {
  Complex alpha;
  Complex tau_exact;  // Q(-alpha) / P'(-alpha) before the admissibility check
  double tau = 0.0;
  bool admissible = false;
};

/// Reason codes: NotMonic, DoubleRoot, QVanishesAtRoot, DegreeMismatch, SeriesGrowth.
ConditionReport validate_problem(const Level1Problem& prob);

/// Zeros of P(-zeta) sorted by (Re, Im) with their exponents.
std::vector<SingularPoint> singular_points(const Level1Problem& prob);

double default_lambda_delta(const Level1Problem& prob);

/// Kernels of the Volterra form at alpha in local coordinates. `max_separation`
/// controls truncation of the k_R series.
KernelPair build_kernels(const Level1Problem& prob, Complex alpha, double max_separation);

/// Taylor data at alpha for the series oracle.
SeriesData series_data(const Level1Problem& prob, Complex alpha);

/// Direction avoiding every other singular point by more than margin_deg.
/// A requested direction is honored or rejected with NoAdmissibleRay.
double choose_ray(const Level1Problem& prob, Complex alpha, std::optional<double> requested_theta = std::nullopt,
                  double margin_deg = 10.0);

struct Level1Config {
  double T = 0.0;  // 0: from the z samples and the accuracy target
  double t_min_factor = std::ldexp(1.0, -20);
  double ratio = 2.0;
  int nodes_per_panel = 16;
  double accuracy = 1e-8;
  double margin_deg = 10.0;
  SolveConfig solver;
  QuadratureConfig quadrature;
  LaplaceConfig laplace;
};

/// Default frequency samples {2, 4, 8} e^{-i theta}.
std::vector<Complex> default_z_samples(double theta);

/// Ray length for which the analytic tail stays below 0.1 * accuracy.
double choose_length(const std::vector<Complex>& z, double theta, double accuracy);

struct PositionSolution {
  SingularPoint point;
  Ray ray;
  GridPtr grid;
  KernelPair kernel;
  Solution psi;
  std::vector<ConditionReport> conditions;
};

PositionSolution solve_at(const Level1Problem& prob, const SingularPoint& point, double theta,
                          const std::vector<Complex>& z, const Level1Config& cfg);

struct ResummedSolution {
  PositionSolution position;
  LaplaceResult Psi;
  double ode_residual = 0.0;
  double volterra_residual = 0.0;
};

/// |P Psi| / |Psi| at z, derivatives from Cauchy circles.
double ode_residual(const Level1Problem& prob, const SingularFunction& psi, Complex z, const LaplaceConfig& cfg);

ResummedSolution borel_sum(const Level1Problem& prob, PositionSolution position, const std::vector<Complex>& z,
                           const Level1Config& cfg);

}  // namespace rsv
