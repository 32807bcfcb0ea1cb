#pragma once

#include <vector>

#include "rsv/types.hpp"

namespace rsv {

/// Polynomial with complex coefficients in ascending order: c[0] + c[1] x + ...
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Complex> coefficients);

  static Polynomial from_real(const std::vector<double>& coefficients);

  const std::vector<Complex>& coefficients() const { return coeffs_; }
  /// Degree after dropping exactly-zero leading coefficients; -1 for the zero polynomial.
  int degree() const;
  Complex leading() const;
  bool is_zero() const { return degree() < 0; }

  Complex operator()(Complex x) const;
  Polynomial derivative() const;

  /// The polynomial x -> p(scale * x + shift).
  Polynomial compose_affine(Complex scale, Complex shift) const;

  /// Roots via the companion matrix, each polished by Newton steps.
  std::vector<Complex> roots() const;

 private:
  std::vector<Complex> coeffs_;
};

}  // namespace rsv
