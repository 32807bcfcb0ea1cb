#pragma once

#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "rsv/types.hpp"

namespace rsv {

struct Ray {
  Complex alpha{0.0, 0.0};
  double theta = 0.0;
  double T = 1.0;

  Complex direction() const { return std::polar(1.0, theta); }
  Complex point(double t) const { return alpha + t * direction(); }
};

struct Panel {
  double lo;
  double hi;
};

/// Geometrically graded panels on [t_min, T] with first-kind Chebyshev nodes
/// on every panel. Interpolation of nodal data is barycentric per panel.
class RayGrid {
 public:
  RayGrid(Ray ray, double t_min, double ratio, int nodes_per_panel);

  const Ray& ray() const { return ray_; }
  double t_min() const { return t_min_; }
  double T() const { return ray_.T; }
  double ratio() const { return ratio_; }
  int nodes_per_panel() const { return n_; }
  const std::vector<Panel>& panels() const { return panels_; }
  const std::vector<double>& nodes() const { return nodes_; }
  std::size_t size() const { return nodes_.size(); }

  /// Nodes, midpoints between consecutive nodes and panel endpoints, sorted.
  const std::vector<double>& norm_samples() const { return samples_; }

  std::size_t panel_index(double t) const;

  /// Interpolant of nodal values at t in [0, T]. Below t_min the first
  /// panel's Chebyshev expansion is continued at reduced degree.
  Complex interpolate(std::span<const Complex> values, double t) const;

 private:
  Complex core_extrapolate(std::span<const Complex> values, double t) const;

  Ray ray_;
  double t_min_;
  double ratio_;
  int n_;
  std::vector<Panel> panels_;
  std::vector<double> nodes_;
  std::vector<double> samples_;
  std::vector<double> ref_nodes_;
  std::vector<double> bary_;
};

using GridPtr = std::shared_ptr<const RayGrid>;

/// Throws InvalidGrading for ratio <= 1, t_min >= T, T <= 0 or fewer than 2 nodes.
GridPtr build_ray_grid(const Ray& ray, double t_min, double ratio, int nodes_per_panel);

/// Default lower cutoff 2^-20 T.
inline double default_t_min(double T) { return std::ldexp(T, -20); }

/// f(alpha + t e^{i theta}) = (t e^{i theta})^sigma g(t).
struct SingularFunction {
  GridPtr grid;
  double sigma = 0.0;
  std::vector<Complex> g;
  double lambda_hint = 0.0;

  /// Interpolated smooth part on [0, T].
  Complex smooth(double t) const;
  /// Throws OutOfRange outside [t_min, T].
  Complex eval(double t) const;
  /// Value of f itself at a grid node.
  Complex value_at_node(std::size_t i) const;
};

/// f built from samples of the smooth part h(t) at the nodes.
template <class H>
SingularFunction sample_function(const GridPtr& grid, double sigma, H&& h, double lambda_hint = 0.0) {
  SingularFunction f{grid, sigma, std::vector<Complex>(grid->size()), lambda_hint};
  for (std::size_t i = 0; i < grid->size(); ++i) f.g[i] = h(grid->nodes()[i]);
  return f;
}

/// Represents f with a different exponent: g -> (t u)^{sigma - new_sigma} g.
SingularFunction reexpress(const SingularFunction& f, double new_sigma);

/// a f + b h on a common exponent (the smaller one).
SingularFunction combine(Complex a, const SingularFunction& f, Complex b, const SingularFunction& h);

struct NormParams {
  double sigma = 0.0;
  double lambda = 0.0;
};

/// max over norm samples of t^{-sigma} e^{-Lambda t} |f|.
double weighted_norm(const SingularFunction& f, const NormParams& params);
/// Logarithm of weighted_norm; -inf for f == 0. Avoids underflow at large Lambda.
double log_weighted_norm(const SingularFunction& f, const NormParams& params);
/// Restricted to samples with t in [lo, hi].
double log_weighted_norm(const SingularFunction& f, const NormParams& params, double lo, double hi);

struct InclusionResult {
  SingularFunction f;
  NormParams params;
  double bound;  // sup over [t_min, T] of t^{sigma - sigma'} e^{-(Lambda' - Lambda) t}
};

/// Moves f from (sigma, lambda_hint) to new_params. Legal when sigma' < sigma
/// and Lambda' > Lambda, or sigma' == sigma and Lambda' >= Lambda.
InclusionResult include(const SingularFunction& f, const NormParams& new_params);
InclusionResult include(const SingularFunction& f, const NormParams& old_params,
                        const NormParams& new_params);

/// Exponential rate for which the weighted norm is comfortably finite: a
/// slope fit of log|f| over [T/2, T], padded.
double estimate_growth_rate(const SingularFunction& f);

/// CSV with a '#' header carrying alpha, theta, T; columns t,re_g,im_g,sigma.
void write_csv(std::ostream& os, const SingularFunction& f);
void write_csv(const std::string& path, const SingularFunction& f);

struct CsvDump {
  Ray ray;
  std::vector<double> t;
  std::vector<Complex> g;
  double sigma = 0.0;
};
CsvDump read_csv(std::istream& is);

}  // namespace rsv
