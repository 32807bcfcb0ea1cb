#include <doctest.h>

#include "rsv/error.hpp"
#include "rsv/volterra.hpp"
#include "support.hpp"

using namespace rsv;
using namespace rsvtest;

namespace {

OperatorHandle toy_op(std::optional<double> r0, double T = 16.0) {
  KernelPair kp{toy_k0(0.5), std::nullopt};
  if (r0) kp.star = toy_star(*r0);
  return {kp, {}, toy_grid(T)};
}

OperatorHandle zero_op(double T = 16.0) {
  KernelPair kp{{[](Complex) { return Complex{1.0, 0.0}; }, [](Complex) { return Complex{0.0, 0.0}; }, 1.0},
                std::nullopt};
  return {kp, {}, toy_grid(T)};
}

double max_rel(const SingularFunction& a, const SingularFunction& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.grid->size(); ++i)
    worst = std::max(worst, std::abs(a.value_at_node(i) - b.value_at_node(i)) / std::abs(b.value_at_node(i)));
  return worst;
}

}  // namespace

TEST_CASE("separable part on a monomial gives tau/rho") {
  const auto op = toy_op(std::nullopt);
  const auto phi = sample_function(op.grid, -0.4, [](double) { return Complex{1.0, 0.0}; });
  const auto out = apply(op, phi, Part::Separable);
  CHECK(out.sigma == -0.4);
  for (std::size_t i = 0; i < out.g.size(); ++i) CHECK(std::abs(out.g[i] - 0.5 / 0.6) < 1e-12);
}

TEST_CASE("perturbation part on a constant") {
  const auto op = toy_op(0.25);
  const auto phi = sample_function(op.grid, 0.0, [](double) { return Complex{1.0, 0.0}; });
  const auto out = apply(op, phi, Part::Perturbation);
  for (std::size_t i = 0; i < out.g.size(); i += 5) {
    const double t = op.grid->nodes()[i];
    CHECK(std::abs(out.value_at_node(i) - 0.125 * t) < 1e-13 * t);
  }
}

TEST_CASE("zero input gives zero output") {
  const auto op = toy_op(0.25);
  const auto phi = sample_function(op.grid, 0.0, [](double) { return Complex{0.0, 0.0}; });
  for (const auto& v : apply(op, phi).g) CHECK(std::abs(v) == 0.0);
}

TEST_CASE("linearity") {
  const auto op = toy_op(0.25);
  const auto a = sample_function(op.grid, -0.5, [](double t) { return Complex{std::cos(t), 0.3 * t}; });
  const auto b = sample_function(op.grid, -0.5, [](double t) { return Complex{1.0 / (1.0 + t), -1.0}; });
  const Complex ca{2.0, -1.0}, cb{-0.5, 0.25};
  const auto lhs = apply(op, combine(ca, a, cb, b));
  const auto rhs = combine(ca, apply(op, a), cb, apply(op, b));
  CHECK(max_rel(lhs, rhs) < 1e-12);
}

TEST_CASE("full operator is the sum of its parts") {
  const auto op = toy_op(0.25);
  const auto phi = sample_function(op.grid, -0.5, [](double t) { return Complex{std::exp(-0.1 * t), std::sin(t)}; });
  const auto full = apply(op, phi, Part::Full);
  const auto sum = combine(1.0, apply(op, phi, Part::Separable), 1.0, apply(op, phi, Part::Perturbation));
  CHECK(max_rel(full, sum) < 1e-12);
}

TEST_CASE("too singular input is rejected") {
  const auto op = toy_op(std::nullopt);
  const auto phi = sample_function(op.grid, -1.0, [](double) { return Complex{1.0, 0.0}; });
  CHECK_THROWS_AS(apply(op, phi), Error);
}

TEST_CASE("beta moments") {
  CHECK(beta_moment(1.0, 0.0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(beta_moment(0.0, 0.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(beta_moment(1.0, 0.5) - 4.0 / 15.0) <= 1e-10);
  CHECK_THROWS_AS(beta_moment(-1.0, 0.0), Error);
}

TEST_CASE("smoothing order") {
  const auto op = toy_op(0.25);
  const auto inv_sqrt = sample_function(op.grid, -0.5, [](double) { return Complex{1.0, 0.0}; });
  CHECK(smoothing_order(op, inv_sqrt).value() == doctest::Approx(0.5).epsilon(0.05));
  const auto one = sample_function(op.grid, 0.0, [](double) { return Complex{1.0, 0.0}; });
  CHECK(smoothing_order(op, one).value() == doctest::Approx(1.0).epsilon(0.05));
  const auto zero = sample_function(op.grid, 0.0, [](double) { return Complex{0.0, 0.0}; });
  CHECK_FALSE(smoothing_order(op, zero).has_value());
}

TEST_CASE("smoothed norm obeys the beta bound") {
  const auto op = toy_op(0.25);
  // C is fitted on node pairs and sits a few 1e-7 below the sup 0.25
  const double C = verify_diag(*op.kernel.star, 1.0, *op.grid).constants.at("C");
  for (double sigma : {-0.5, 0.0, 0.7}) {
    const auto phi = sample_function(op.grid, sigma, [](double t) { return Complex{std::exp(t), std::cos(3 * t)}; });
    for (double lam : {1.0, 2.0}) {
      const double lhs = weighted_norm(apply(op, phi, Part::Perturbation), {sigma + 1.0, lam});
      CHECK(lhs <= C * beta_moment(1.0, sigma) * weighted_norm(phi, {sigma, lam}) * (1.0 + 1e-6));
    }
  }
}

TEST_CASE("contraction near factor on the extremal monomial") {
  const auto op = toy_op(std::nullopt);
  const auto est = contraction_estimate(op, 0.6, 1.0, 8.0);
  CHECK(est.near_factor == doctest::Approx(0.5 / 0.6).epsilon(1e-6));
  const auto doubled = contraction_estimate(op, 0.6, 2.0, 8.0);
  CHECK(doubled.far_factor < est.far_factor);
}

TEST_CASE("contraction estimate is reproducible from its seed") {
  const auto op = toy_op(0.25);
  const auto a = contraction_estimate(op, 1.5, 2.0, 8.0, {8, 7});
  const auto b = contraction_estimate(op, 1.5, 2.0, 8.0, {8, 7});
  CHECK(a.overall == b.overall);
}

TEST_CASE("zero kernel contracts to zero") {
  const auto op = zero_op();
  CHECK(contraction_estimate(op, 0.6, 1.0, 8.0).overall == 0.0);
  const auto s = lambda_lower_search(op, 0.6, 0.9, 3.0, 8.0);
  CHECK(s.lambda == 3.0);
  CHECK(s.doublings == 0);
}

TEST_CASE("lambda search meets its target") {
  const auto op = toy_op(std::nullopt);
  const auto s = lambda_lower_search(op, 0.6, 0.9, 0.0, 8.0);
  CHECK(s.estimate.overall <= 0.9);
}

TEST_CASE("lambda search cannot beat the near bound") {
  const auto op = toy_op(std::nullopt);
  try {
    lambda_lower_search(op, 0.6, 0.8, 0.0, 8.0, {}, 6);
    FAIL("search should be exhausted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SearchExhausted);
  }
}
