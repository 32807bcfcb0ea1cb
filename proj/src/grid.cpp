#include "rsv/grid.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

#include "rsv/error.hpp"

namespace rsv {

namespace {

constexpr int kCoreDegree = 4;

double normalize_angle(double theta) {
  double r = std::fmod(theta, 2.0 * kPi);
  if (r < 0.0) r += 2.0 * kPi;
  if (r >= 2.0 * kPi) r = 0.0;
  return r;
}

}  // namespace

RayGrid::RayGrid(Ray ray, double t_min, double ratio, int nodes_per_panel)
    : ray_(ray), t_min_(t_min), ratio_(ratio), n_(nodes_per_panel) {
  require(std::isfinite(ray.T) && ray.T > 0.0, ErrorCode::InvalidGrading, "ray length must be positive");
  require(ratio > 1.0 && std::isfinite(ratio), ErrorCode::InvalidGrading, "grading ratio must exceed 1");
  require(t_min > 0.0 && t_min < ray.T, ErrorCode::InvalidGrading, "need 0 < t_min < T");
  require(nodes_per_panel >= 2, ErrorCode::InvalidGrading, "need at least 2 nodes per panel");
  ray_.theta = normalize_angle(ray.theta);

  const int K = std::max(1, static_cast<int>(std::ceil(std::log(ray.T / t_min) / std::log(ratio) - 1e-9)));
  double lo = t_min;
  for (int k = 0; k < K; ++k) {
    const double hi = (k == K - 1) ? ray.T : std::min(ray.T, lo * ratio);
    panels_.push_back({lo, hi});
    lo = hi;
  }

  ref_nodes_.resize(n_);
  bary_.resize(n_);
  for (int j = 0; j < n_; ++j) {
    const double phi = (2.0 * j + 1.0) * kPi / (2.0 * n_);
    ref_nodes_[j] = -std::cos(phi);
    bary_[j] = ((j % 2) ? -1.0 : 1.0) * std::sin(phi);
  }

  nodes_.reserve(panels_.size() * n_);
  for (const auto& p : panels_) {
    const double mid = 0.5 * (p.lo + p.hi), half = 0.5 * (p.hi - p.lo);
    for (int j = 0; j < n_; ++j) nodes_.push_back(mid + half * ref_nodes_[j]);
  }

  samples_ = nodes_;
  for (std::size_t i = 0; i + 1 < nodes_.size(); ++i) samples_.push_back(0.5 * (nodes_[i] + nodes_[i + 1]));
  for (const auto& p : panels_) samples_.push_back(p.lo);
  samples_.push_back(ray_.T);
  std::sort(samples_.begin(), samples_.end());
  samples_.erase(std::unique(samples_.begin(), samples_.end()), samples_.end());
}

std::size_t RayGrid::panel_index(double t) const {
  if (t <= panels_.front().hi) return 0;
  auto k = static_cast<std::ptrdiff_t>(std::floor(std::log(t / t_min_) / std::log(ratio_)));
  k = std::clamp<std::ptrdiff_t>(k, 0, static_cast<std::ptrdiff_t>(panels_.size()) - 1);
  while (k > 0 && t < panels_[k].lo) --k;
  while (k + 1 < static_cast<std::ptrdiff_t>(panels_.size()) && t > panels_[k].hi) ++k;
  return static_cast<std::size_t>(k);
}

Complex RayGrid::interpolate(std::span<const Complex> values, double t) const {
  if (t < t_min_) return core_extrapolate(values, t);
  const std::size_t k = panel_index(t);
  const Panel& p = panels_[k];
  const double x = (2.0 * t - p.lo - p.hi) / (p.hi - p.lo);
  const Complex* v = values.data() + k * n_;
  Complex num{0.0, 0.0};
  double den = 0.0;
  for (int j = 0; j < n_; ++j) {
    const double d = x - ref_nodes_[j];
    if (d == 0.0) return v[j];
    const double w = bary_[j] / d;
    num += w * v[j];
    den += w;
  }
  return num / den;
}

Complex RayGrid::core_extrapolate(std::span<const Complex> values, double t) const {
  const Panel& p = panels_.front();
  const int deg = std::min(n_ - 1, kCoreDegree);
  // Chebyshev coefficients of the first panel from its nodal values.
  Complex coef[kCoreDegree + 1] = {};
  for (int j = 0; j < n_; ++j) {
    double tk[kCoreDegree + 1] = {1.0, ref_nodes_[j]};
    for (int k = 2; k <= deg; ++k) tk[k] = 2.0 * ref_nodes_[j] * tk[k - 1] - tk[k - 2];
    for (int k = 0; k <= deg; ++k) coef[k] += tk[k] * values[j];
  }
  for (int k = 0; k <= deg; ++k) coef[k] *= (k == 0 ? 1.0 : 2.0) / n_;
  const double x = (2.0 * t - p.lo - p.hi) / (p.hi - p.lo);
  double tk[kCoreDegree + 1] = {1.0, x};
  for (int k = 2; k <= deg; ++k) tk[k] = 2.0 * x * tk[k - 1] - tk[k - 2];
  Complex acc{0.0, 0.0};
  for (int k = 0; k <= deg; ++k) acc += coef[k] * tk[k];
  return acc;
}

GridPtr build_ray_grid(const Ray& ray, double t_min, double ratio, int nodes_per_panel) {
  return std::make_shared<const RayGrid>(ray, t_min, ratio, nodes_per_panel);
}

Complex SingularFunction::smooth(double t) const {
  require(t >= 0.0 && t <= grid->T() * (1.0 + 1e-14), ErrorCode::OutOfRange, "t outside [0, T]");
  return grid->interpolate(g, std::min(t, grid->T()));
}

Complex SingularFunction::eval(double t) const {
  require(t >= grid->t_min() * (1.0 - 1e-14) && t <= grid->T() * (1.0 + 1e-14), ErrorCode::OutOfRange,
          "t outside the grid span");
  return ray_power(t, grid->ray().theta, sigma) * grid->interpolate(g, std::clamp(t, grid->t_min(), grid->T()));
}

Complex SingularFunction::value_at_node(std::size_t i) const {
  return ray_power(grid->nodes()[i], grid->ray().theta, sigma) * g[i];
}

SingularFunction reexpress(const SingularFunction& f, double new_sigma) {
  SingularFunction out = f;
  if (new_sigma == f.sigma) return out;
  const double theta = f.grid->ray().theta;
  for (std::size_t i = 0; i < out.g.size(); ++i)
    out.g[i] *= ray_power(f.grid->nodes()[i], theta, f.sigma - new_sigma);
  out.sigma = new_sigma;
  return out;
}

SingularFunction combine(Complex a, const SingularFunction& f, Complex b, const SingularFunction& h) {
  require(f.grid == h.grid, ErrorCode::PreconditionViolated, "functions live on different grids");
  const double s = std::min(f.sigma, h.sigma);
  SingularFunction x = reexpress(f, s), y = reexpress(h, s);
  for (std::size_t i = 0; i < x.g.size(); ++i) x.g[i] = a * x.g[i] + b * y.g[i];
  x.lambda_hint = std::max(f.lambda_hint, h.lambda_hint);
  return x;
}

double log_weighted_norm(const SingularFunction& f, const NormParams& params, double lo, double hi) {
  double best = -std::numeric_limits<double>::infinity();
  for (double t : f.grid->norm_samples()) {
    if (t < lo || t > hi) continue;
    const double mag = std::abs(f.grid->interpolate(f.g, t));
    if (mag == 0.0) continue;
    const double v = (f.sigma - params.sigma) * std::log(t) - params.lambda * t + std::log(mag);
    best = std::max(best, v);
  }
  // With matching exponents the weighted function has the finite limit |g(0)| at t -> 0.
  if (lo <= 0.0 && f.sigma == params.sigma) {
    const double mag = std::abs(f.grid->interpolate(f.g, 0.0));
    if (mag > 0.0) best = std::max(best, std::log(mag));
  }
  return best;
}

double log_weighted_norm(const SingularFunction& f, const NormParams& params) {
  return log_weighted_norm(f, params, 0.0, std::numeric_limits<double>::infinity());
}

double weighted_norm(const SingularFunction& f, const NormParams& params) {
  return std::exp(log_weighted_norm(f, params));
}

InclusionResult include(const SingularFunction& f, const NormParams& old_params, const NormParams& new_params) {
  const double ds = old_params.sigma - new_params.sigma;
  const double dl = new_params.lambda - old_params.lambda;
  const bool legal = (ds > 0.0 && dl > 0.0) || (ds == 0.0 && dl >= 0.0);
  require(legal, ErrorCode::IllegalInclusion, "parameters are not ordered for an inclusion");
  const double lo = f.grid->t_min(), hi = f.grid->T();
  double t_star = lo;
  if (ds > 0.0) t_star = std::clamp(ds / dl, lo, hi);
  const double bound = std::exp(ds * std::log(t_star) - dl * t_star);
  SingularFunction out = f;
  out.lambda_hint = new_params.lambda;
  return {std::move(out), new_params, bound};
}

InclusionResult include(const SingularFunction& f, const NormParams& new_params) {
  return include(f, NormParams{f.sigma, f.lambda_hint}, new_params);
}

double estimate_growth_rate(const SingularFunction& f) {
  const double T = f.grid->T();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (std::size_t i = 0; i < f.g.size(); ++i) {
    const double t = f.grid->nodes()[i];
    if (t < 0.5 * T) continue;
    const double mag = std::abs(f.value_at_node(i));
    if (!(mag > 0.0)) continue;
    sx += t;
    sy += std::log(mag);
    sxx += t * t;
    sxy += t * std::log(mag);
    ++n;
  }
  if (n < 2) return 0.05;
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return std::max(0.0, slope) * 1.1 + 0.05;
}

void write_csv(std::ostream& os, const SingularFunction& f) {
  const Ray& r = f.grid->ray();
  os << std::setprecision(17);
  os << "# alpha=" << r.alpha.real() << "," << r.alpha.imag() << " theta=" << r.theta << " T=" << r.T << "\n";
  os << "t,re_g,im_g,sigma\n";
  for (std::size_t i = 0; i < f.g.size(); ++i)
    os << f.grid->nodes()[i] << "," << f.g[i].real() << "," << f.g[i].imag() << "," << f.sigma << "\n";
}

void write_csv(const std::string& path, const SingularFunction& f) {
  std::ofstream os(path);
  require(static_cast<bool>(os), ErrorCode::ConfigError, "cannot write " + path);
  write_csv(os, f);
}

CsvDump read_csv(std::istream& is) {
  CsvDump dump;
  std::string line;
  require(static_cast<bool>(std::getline(is, line)) && line.rfind("# alpha=", 0) == 0, ErrorCode::ConfigError,
          "missing CSV header");
  double ar = 0, ai = 0;
  {
    std::string body = line.substr(8);
    for (char& c : body)
      if (c == ',' || c == '=') c = ' ';
    std::istringstream ss(body);
    std::string tok;
    ss >> ar >> ai >> tok >> dump.ray.theta >> tok >> dump.ray.T;
    require(!ss.fail(), ErrorCode::ConfigError, "malformed CSV header");
  }
  dump.ray.alpha = {ar, ai};
  std::getline(is, line);  // column names
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    for (char& c : line)
      if (c == ',') c = ' ';
    std::istringstream ss(line);
    double t, re, im;
    ss >> t >> re >> im >> dump.sigma;
    require(!ss.fail(), ErrorCode::ConfigError, "malformed CSV row");
    dump.t.push_back(t);
    dump.g.emplace_back(re, im);
  }
  return dump;
}

}  // namespace rsv
