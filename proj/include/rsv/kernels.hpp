#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rsv/grid.hpp"
#include "rsv/types.hpp"

namespace rsv {

// Every callable below takes local coordinates x = zeta - alpha, so that
// cancellation near the singular point never enters through the caller.
using LocalFn = std::function<Complex(Complex)>;
using LocalKernel = std::function<Complex(Complex, Complex)>;

/// k0(a, a') = -q(a') / p(a).
struct SeparableKernel {
  LocalFn p;
  LocalFn q;
  Complex alpha{0.0, 0.0};

  Complex operator()(Complex x, Complex x_prime) const { return -q(x_prime) / p(x); }
};

struct PerturbationKernel {
  LocalKernel k_star;
  double gamma = 1.0;
  double lambda_delta = 0.0;
};

struct KernelPair {
  SeparableKernel k0;
  std::optional<PerturbationKernel> star;
};

struct Witness {
  double t = 0.0;
  double t_prime = 0.0;
  double margin = 0.0;
};

struct ConditionReport {
  std::string condition;
  bool verified = false;
  std::map<std::string, double> constants;
  std::optional<Witness> witness;
  std::vector<std::string> reasons;
};

/// Sampling controls shared by the verifiers. Points are taken on the ray
/// alpha + t e^{i theta}.
struct SampleRay {
  double theta = 0.0;
  double T = 1.0;
  double t_floor = 0.0;  // 0 means 2^-20 T
};

/// Extrapolated limit of x k0(x, x) as x -> 0 along direction theta, with
/// |x| = h 2^-k for six levels.
double estimate_tau(const SeparableKernel& k0, double theta = 0.0, double h = 0.0625);

/// Finds delta such that |k0(a, a')| < sigma/|x| on sampled pairs inside
/// |x'| <= |x| < delta and bounds |k0(a, a) - tau/x| there.
ConditionReport verify_sing(const SeparableKernel& k0, double tau, double sigma, const SampleRay& ray);

/// |k(a,a')| |x| <= C e^{lambda |x - x'|} |x - x'|^gamma over node pairs
/// t' < t of the grid; gamma = 0 for the separable kernel.
ConditionReport verify_diag(const LocalKernel& kernel, double gamma, double lambda_delta, const RayGrid& grid);
ConditionReport verify_diag(const SeparableKernel& k0, double lambda_delta, const RayGrid& grid);
ConditionReport verify_diag(const PerturbationKernel& ks, double lambda_delta, const RayGrid& grid);

/// Log-log slope of |k*(a,a') x| against |x - x'|. Returns +inf for a
/// kernel that vanishes identically on the samples.
double estimate_gamma(const LocalKernel& k_star, double theta = 0.0, double scale = 1.0);

/// Fits p(x) = B x + O(|x|^{1+eps}) near x = 0.
ConditionReport verify_reg_p(const LocalFn& p, Complex alpha, double theta = 0.0, double h = 0.0625);

/// Neville extrapolation to h = 0 of samples v_k taken at h_k.
Complex extrapolate_to_zero(const std::vector<double>& h, const std::vector<Complex>& v,
                            double* last_correction = nullptr);

}  // namespace rsv
