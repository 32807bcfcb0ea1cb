#include <doctest.h>

#include "rsv/error.hpp"
#include "rsv/laplace.hpp"
#include "support.hpp"

using namespace rsv;
using namespace rsvtest;

namespace {

SingularFunction monomial(const GridPtr& grid, double sigma) {
  return sample_function(grid, sigma, [](double) { return Complex{1.0, 0.0}; });
}

}  // namespace

TEST_CASE("fractional integrals of one") {
  const auto grid = build_ray_grid({0.0, 0.0, 4.0}, std::ldexp(4.0, -20), 2.0, 16);
  const auto one = monomial(grid, 0.0);
  const auto i1 = fractional_integral(1.0, one);
  CHECK(i1.sigma == 1.0);
  CHECK(std::abs(i1.eval(1.0) - 1.0) < 1e-13);
  const auto ih = fractional_integral(0.5, one);
  CHECK(ih.sigma == 0.5);
  CHECK(std::abs(ih.eval(1.0) - 1.1283791670955126) < 1e-12);
}

TEST_CASE("fractional integral raises the exponent exactly") {
  const auto grid = toy_grid(8.0, 0.4);
  const auto phi = sample_function(grid, -0.3, [](double t) { return Complex{std::cos(t), 1.0}; });
  for (double nu : {0.25, 0.5, 1.0, 2.5}) CHECK(fractional_integral(nu, phi).sigma == doctest::Approx(-0.3 + nu).epsilon(1e-15));
}

TEST_CASE("semigroup on monomials") {
  const auto grid = toy_grid(8.0, 0.7);
  for (double sigma : {-0.5, 0.0, 0.5}) {
    const auto phi = monomial(grid, sigma);
    for (auto [mu, nu] : {std::pair{1.0, 1.0}, std::pair{0.5, 0.5}, std::pair{0.5, 1.0}}) {
      const auto twice = fractional_integral(mu, fractional_integral(nu, phi));
      const auto once = fractional_integral(mu + nu, phi);
      const NormParams p{sigma + mu + nu, 0.0};
      CHECK(weighted_norm(combine(1.0, twice, -1.0, once), p) <= 1e-8 * weighted_norm(phi, {sigma, 0.0}));
    }
  }
}

TEST_CASE("transform of one is 1/z") {
  const double T = 12.0;
  const auto grid = build_ray_grid({0.0, 0.0, T}, std::ldexp(T, -20), 2.0, 16);
  const auto res = laplace_transform(monomial(grid, 0.0), {Complex{2.0, 0.0}}, {0.1, 1e-6, {}});
  CHECK(std::abs(res.phi[0] - 0.5) <= 1e-12 + res.tail_bound[0]);
  CHECK(res.tail_bound[0] <= std::exp(-2.0 * T) / 2.0 * (1.0 + 1e-12));
}

TEST_CASE("transform of the inverse square root") {
  const auto grid = toy_grid(24.0);
  const auto res = laplace_transform(monomial(grid, -0.5), {Complex{2.0, 0.0}});
  CHECK(std::abs(res.phi[0].real() - 0.169620) <= 5e-6);  // literal rounded to 6 digits
  CHECK(std::abs(res.phi[0] - std::sqrt(kPi) * std::exp(-2.0) / std::sqrt(2.0)) <= 1e-12);
}

TEST_CASE("transforms of shifted monomials on tilted rays") {
  for (double theta : {0.0, 0.6, -0.9}) {
    const Complex alpha{1.0, -0.5};
    const auto grid = toy_grid(24.0, theta, 16, alpha);
    for (double tau : {0.5, 1.0, 1.5}) {
      const auto phi = monomial(grid, tau - 1.0);
      const std::vector<Complex> z = {2.0 * std::polar(1.0, -theta), Complex{3.0, 0.0} * std::polar(1.0, 0.2 - theta)};
      const auto res = laplace_transform(phi, z);
      for (std::size_t k = 0; k < z.size(); ++k) {
        const Complex exact = std::tgamma(tau) * std::exp(-alpha * z[k]) * frequency_power(z[k], grid->ray().theta, -tau);
        CHECK(rel(res.phi[k], exact) <= 1e-6 + res.tail_bound[k] / std::abs(exact));
      }
    }
  }
}

TEST_CASE("half-plane violations") {
  const auto grid = toy_grid(8.0);
  const auto phi = monomial(grid, 0.0);
  CHECK_THROWS_AS(laplace_transform(phi, {Complex{-1.0, 0.0}}), Error);
  CHECK_THROWS_AS(laplace_transform(phi, {Complex{0.05, 0.0}}), Error);
}

TEST_CASE("short rays leave a large tail") {
  const auto grid = toy_grid(2.0);
  try {
    laplace_transform(monomial(grid, 0.0), {Complex{1.0, 0.0}});
    FAIL("expected TailTooLarge");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::TailTooLarge);
  }
}

TEST_CASE("tail shrinks as the frequency moves right") {
  const auto grid = toy_grid(10.0);
  const auto phi = sample_function(grid, -0.5, [](double t) { return Complex{std::exp(0.5 * t), 0.0}; }, 0.6);
  double prev = std::numeric_limits<double>::infinity();
  for (double x : {1.0, 2.0, 4.0, 8.0}) {
    double tail = 0.0;
    laplace_value(phi, x, {}, &tail);
    CHECK(tail < prev);
    prev = tail;
  }
}

TEST_CASE("transform is linear") {
  const auto grid = toy_grid(24.0, 0.3);
  const auto a = sample_function(grid, -0.5, [](double t) { return Complex{1.0, t}; });
  const auto b = sample_function(grid, -0.5, [](double t) { return Complex{std::cos(t), 0.0}; });
  const Complex z = 3.0 * std::polar(1.0, -0.3);
  const Complex ca{0.5, 2.0}, cb{-1.0, 0.0};
  const Complex lhs = laplace_value(combine(ca, a, cb, b), z, {});
  const Complex rhs = ca * laplace_value(a, z, {}) + cb * laplace_value(b, z, {});
  CHECK(rel(lhs, rhs) < 1e-13);
}

TEST_CASE("cauchy derivatives of the exponential") {
  auto F = [](Complex w) { return std::exp(-2.0 * w); };
  for (int n = 0; n <= 3; ++n) {
    const Complex d = cauchy_derivative(F, 1.0, 0.5, n);
    CHECK(rel(d, std::pow(-2.0, n) * F(1.0)) < 1e-13);
  }
  CHECK(cauchy_radius(4.0, 0.0, 1.0, 0.2) == doctest::Approx(1.4));
}

TEST_CASE("dictionary on one") {
  const auto grid = build_ray_grid({0.0, 0.0, 24.0}, std::ldexp(24.0, -20), 2.0, 16);
  const auto one = monomial(grid, 0.0);
  const auto rep = verify_dictionary(one, 1.0, 1, {Complex{2.0, 0.0}});
  CHECK(rep.fractional_mismatch <= 1e-6 + rep.tail);
  CHECK(rep.multiplication_mismatch <= 1e-6 + rep.tail);
  CHECK(std::abs(laplace_value(fractional_integral(1.0, one), 2.0, {}) - 0.25) < 1e-12);
}

TEST_CASE("dictionary on the inverse square root") {
  const auto grid = toy_grid(24.0);
  const auto phi = monomial(grid, -0.5);
  const auto rep = verify_dictionary(phi, 0.5, 1, {Complex{2.0, 0.0}, Complex{4.0, 0.0}});
  CHECK(rep.fractional_mismatch <= 1e-6 + rep.tail);
  CHECK(rep.multiplication_mismatch <= 1e-6 + rep.tail);
  const Complex half = laplace_value(fractional_integral(0.5, phi), 2.0, {});
  CHECK(std::abs(half.real() - 0.119938) <= 1e-6);
}
