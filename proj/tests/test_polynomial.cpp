#include <doctest.h>

#include <algorithm>

#include "rsv/polynomial.hpp"

using namespace rsv;

TEST_CASE("evaluation and derivative") {
  const auto p = Polynomial::from_real({2.0, 3.0, 1.0});
  CHECK(p.degree() == 2);
  CHECK(std::abs(p(Complex{-1.0, 0.0})) < 1e-15);
  CHECK(p(Complex{1.0, 0.0}).real() == doctest::Approx(6.0));
  const auto dp = p.derivative();
  CHECK(dp.degree() == 1);
  CHECK(dp(Complex{-2.0, 0.0}).real() == doctest::Approx(-1.0));
}

TEST_CASE("affine composition") {
  // P(x) = x^2 + 3x + 2 and x -> -(1 + x) gives x^2 - x
  const auto p = Polynomial::from_real({2.0, 3.0, 1.0}).compose_affine(-1.0, -1.0);
  const auto& c = p.coefficients();
  REQUIRE(c.size() >= 3);
  CHECK(std::abs(c[0]) < 1e-15);
  CHECK(c[1].real() == doctest::Approx(-1.0));
  CHECK(c[2].real() == doctest::Approx(1.0));
  const Polynomial q({Complex{1.0, 2.0}, Complex{0.0, -1.0}, Complex{3.0, 0.5}});
  const Complex s{0.3, -0.7}, h{1.1, 0.2}, x{-0.4, 0.9};
  CHECK(std::abs(q.compose_affine(s, h)(x) - q(s * x + h)) < 1e-13);
}

TEST_CASE("roots are accurate") {
  auto r = Polynomial::from_real({2.0, 3.0, 1.0}).roots();
  std::sort(r.begin(), r.end(), [](Complex a, Complex b) { return a.real() < b.real(); });
  REQUIRE(r.size() == 2);
  CHECK(std::abs(r[0] - Complex{-2.0, 0.0}) < 1e-14);
  CHECK(std::abs(r[1] - Complex{-1.0, 0.0}) < 1e-14);

  const auto circ = Polynomial::from_real({1.0, 0.0, 1.0}).roots();
  for (const auto& z : circ) CHECK(std::abs(std::abs(z) - 1.0) < 1e-14);

  const Polynomial w({Complex{0.5, -1.0}, Complex{2.0, 1.0}, Complex{-1.0, 0.3}, Complex{1.0, 0.0}});
  for (const auto& z : w.roots()) CHECK(std::abs(w(z)) < 1e-12);
}

TEST_CASE("leading coefficient ignores trailing zeros") {
  const auto p = Polynomial::from_real({1.0, 2.0, 0.0});
  CHECK(p.degree() == 1);
  CHECK(p.leading().real() == doctest::Approx(2.0));
  CHECK(Polynomial::from_real({0.0}).is_zero());
}
