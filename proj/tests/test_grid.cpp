#include <doctest.h>

#include <sstream>

#include "rsv/error.hpp"
#include "rsv/grid.hpp"

using namespace rsv;

namespace {

SingularFunction constant(const GridPtr& grid, double sigma, Complex c = 1.0) {
  return sample_function(grid, sigma, [c](double) { return c; });
}

}  // namespace

TEST_CASE("geometric panels on [1/16, 1]") {
  const auto grid = build_ray_grid({0.0, 0.0, 1.0}, 1.0 / 16, 2.0, 4);
  REQUIRE(grid->panels().size() == 4);
  const double edges[] = {1.0 / 16, 1.0 / 8, 1.0 / 4, 1.0 / 2, 1.0};
  for (int k = 0; k < 4; ++k) {
    CHECK(grid->panels()[k].lo == doctest::Approx(edges[k]));
    CHECK(grid->panels()[k].hi == doctest::Approx(edges[k + 1]));
  }
  CHECK(grid->size() == 16);
}

TEST_CASE("panel count follows the grading") {
  const auto grid = build_ray_grid({1.0, kPi / 2, 8.0}, std::ldexp(1.0, -10), 2.0, 8);
  CHECK(grid->panels().size() == 13);
  CHECK(grid->size() == 104);
  CHECK(grid->panels().back().hi == 8.0);
}

TEST_CASE("invalid gradings are rejected") {
  auto code = [](auto&& f) {
    try {
      f();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::ConfigError;
  };
  CHECK(code([] { build_ray_grid({0.0, 0.0, 1.0}, 1.0, 2.0, 4); }) == ErrorCode::InvalidGrading);
  CHECK(code([] { build_ray_grid({0.0, 0.0, 1.0}, 0.1, 1.0, 4); }) == ErrorCode::InvalidGrading);
  CHECK(code([] { build_ray_grid({0.0, 0.0, 1.0}, -0.1, 2.0, 4); }) == ErrorCode::InvalidGrading);
}

TEST_CASE("nodes are increasing and cover the span") {
  const auto grid = build_ray_grid({0.0, 0.0, 3.0}, 1e-4, 2.0, 10);
  const auto& n = grid->nodes();
  CHECK(std::is_sorted(n.begin(), n.end()));
  CHECK(n.front() > grid->t_min());
  CHECK(n.back() < grid->T());
  for (std::size_t i = 0; i < n.size(); ++i) {
    const auto& p = grid->panels()[grid->panel_index(n[i])];
    CHECK(n[i] >= p.lo);
    CHECK(n[i] <= p.hi);
  }
}

TEST_CASE("evaluation and branch convention") {
  const auto grid = build_ray_grid({0.0, 0.0, 1.0}, 1e-3, 2.0, 8);
  CHECK(std::abs(constant(grid, 0.0).eval(0.37) - 1.0) < 1e-14);
  CHECK(std::abs(constant(grid, -0.5).eval(0.25) - 2.0) < 1e-14);
  // (t e^{i theta})^sigma = t^sigma e^{i sigma theta}
  const auto left = build_ray_grid({0.0, kPi, 1.0}, 1e-3, 2.0, 8);
  CHECK(std::abs(constant(left, -0.5).eval(1.0) - Complex{0.0, -1.0}) < 1e-14);
  CHECK_THROWS_AS(constant(grid, 0.0).eval(2.0), Error);
}

TEST_CASE("eval reproduces samples at nodes") {
  const auto grid = build_ray_grid({0.5, 0.3, 4.0}, 1e-5, 2.0, 12);
  const auto f = sample_function(grid, 0.7, [](double t) { return Complex{std::cos(t), std::sin(3 * t)}; });
  for (std::size_t i = 0; i < grid->size(); ++i)
    CHECK(std::abs(f.eval(grid->nodes()[i]) - f.value_at_node(i)) <= 1e-14 * std::abs(f.value_at_node(i)));
}

TEST_CASE("interpolation of an analytic smooth part") {
  const auto grid = build_ray_grid({0.0, 0.0, 4.0}, 1e-5, 2.0, 16);
  auto h = [](double t) { return Complex{std::exp(-t) * std::cos(2 * t), t * t}; };
  const auto f = sample_function(grid, 0.0, h);
  for (double t : {1.3e-5, 0.0021, 0.5, 1.7, 3.99})
    CHECK(std::abs(grid->interpolate(f.g, t) - h(t)) < 1e-12);
  // below t_min the first panel is extrapolated
  CHECK(std::abs(f.smooth(0.0) - h(0.0)) < 1e-9);
}

TEST_CASE("weighted norm examples") {
  const auto grid = build_ray_grid({0.0, 0.0, 10.0}, 1e-6, 2.0, 16);
  const auto zeta = constant(grid, 1.0);
  CHECK(weighted_norm(zeta, {1.0, 0.0}) == doctest::Approx(1.0).epsilon(1e-14));
  const auto zeta2 = constant(grid, 2.0);
  CHECK(weighted_norm(zeta2, {1.0, 0.0}) == doctest::Approx(10.0).epsilon(1e-14));
  const auto ex = sample_function(grid, 0.0, [](double t) { return Complex{std::exp(t), 0.0}; });
  CHECK(weighted_norm(ex, {0.0, 1.0}) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("norm scaling and monotonicity in Lambda") {
  const auto grid = build_ray_grid({1.0, 0.4, 6.0}, 1e-4, 2.0, 12);
  const auto f = sample_function(grid, -0.3, [](double t) { return Complex{1.0 + t, std::sin(t)}; });
  const Complex c{-2.0, 1.5};
  SingularFunction cf = f;
  for (auto& v : cf.g) v *= c;
  for (double lam : {0.0, 0.5, 2.0}) {
    CHECK(weighted_norm(cf, {-0.3, lam}) == doctest::Approx(std::abs(c) * weighted_norm(f, {-0.3, lam})).epsilon(1e-13));
    CHECK(weighted_norm(f, {-0.3, lam + 0.5}) <= weighted_norm(f, {-0.3, lam}));
  }
}

TEST_CASE("norm is stable under refinement") {
  auto norm_for = [](int n) {
    const auto grid = build_ray_grid({0.0, 0.0, 8.0}, std::ldexp(8.0, -20), 2.0, n);
    const auto f = sample_function(grid, -0.5, [](double t) { return Complex{std::cos(t) + 0.5 * t, 0.0}; });
    return weighted_norm(f, {-0.5, 1.0});
  };
  CHECK(std::abs(norm_for(16) - norm_for(32)) <= 1e-8);
}

TEST_CASE("inclusion constants") {
  const auto grid = build_ray_grid({0.0, 0.0, 10.0}, 1e-6, 2.0, 16);
  const auto f = constant(grid, 1.0);
  const auto inc = include(f, {1.0, 0.0}, {0.0, 1.0});
  CHECK(inc.bound == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
  CHECK(weighted_norm(inc.f, inc.params) <= inc.bound * weighted_norm(f, {1.0, 0.0}) * (1 + 1e-12));
  CHECK_THROWS_AS(include(f, {0.0, 2.0}, {1.0, 1.0}), Error);
  // same exponent, larger Lambda: bound 1
  CHECK(include(f, {1.0, 0.0}, {1.0, 2.0}).bound == doctest::Approx(1.0));
}

TEST_CASE("reexpress and combine keep the function") {
  const auto grid = build_ray_grid({0.0, 0.7, 2.0}, 1e-4, 2.0, 10);
  const auto f = sample_function(grid, 0.5, [](double t) { return Complex{1.0, t}; });
  const auto h = sample_function(grid, -0.25, [](double t) { return Complex{t, 2.0}; });
  const auto fr = reexpress(f, -0.5);
  CHECK(fr.sigma == -0.5);
  const auto s = combine(2.0, f, Complex{0.0, 1.0}, h);
  CHECK(s.sigma == -0.25);
  for (std::size_t i = 0; i < grid->size(); i += 7) {
    CHECK(std::abs(fr.value_at_node(i) - f.value_at_node(i)) < 1e-13 * std::abs(f.value_at_node(i)));
    const Complex expect = 2.0 * f.value_at_node(i) + Complex{0.0, 1.0} * h.value_at_node(i);
    CHECK(std::abs(s.value_at_node(i) - expect) < 1e-13 * std::abs(expect));
  }
}

TEST_CASE("growth rate estimate bounds an exponential") {
  const auto grid = build_ray_grid({0.0, 0.0, 20.0}, 1e-4, 2.0, 16);
  const auto f = sample_function(grid, 0.0, [](double t) { return Complex{std::exp(0.7 * t), 0.0}; });
  const double lam = estimate_growth_rate(f);
  CHECK(lam >= 0.7);
  CHECK(lam < 1.0);
}

TEST_CASE("csv round trip") {
  const auto grid = build_ray_grid({Complex{1.0, -0.5}, 0.25, 3.0}, 1e-3, 2.0, 6);
  const auto f = sample_function(grid, -0.5, [](double t) { return Complex{t, -t * t}; });
  std::stringstream ss;
  write_csv(ss, f);
  const CsvDump d = read_csv(ss);
  CHECK(d.ray.alpha == Complex{1.0, -0.5});
  CHECK(d.ray.theta == 0.25);
  CHECK(d.ray.T == 3.0);
  CHECK(d.sigma == -0.5);
  REQUIRE(d.g.size() == f.g.size());
  for (std::size_t i = 0; i < d.g.size(); ++i) {
    CHECK(d.t[i] == grid->nodes()[i]);
    CHECK(d.g[i] == f.g[i]);
  }
}
