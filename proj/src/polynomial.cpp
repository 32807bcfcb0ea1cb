#include "rsv/polynomial.hpp"

#include <Eigen/Eigenvalues>

#include "rsv/error.hpp"

namespace rsv {

Polynomial::Polynomial(std::vector<Complex> coefficients) : coeffs_(std::move(coefficients)) {}

Polynomial Polynomial::from_real(const std::vector<double>& coefficients) {
  return Polynomial(std::vector<Complex>(coefficients.begin(), coefficients.end()));
}

int Polynomial::degree() const {
  for (int k = static_cast<int>(coeffs_.size()) - 1; k >= 0; --k)
    if (coeffs_[k] != Complex{0.0, 0.0}) return k;
  return -1;
}

Complex Polynomial::leading() const {
  const int d = degree();
  return d < 0 ? Complex{0.0, 0.0} : coeffs_[d];
}

Complex Polynomial::operator()(Complex x) const {
  Complex acc{0.0, 0.0};
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (coeffs_.size() <= 1) return Polynomial({Complex{0.0, 0.0}});
  std::vector<Complex> d(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = static_cast<double>(k) * coeffs_[k];
  return Polynomial(std::move(d));
}

Polynomial Polynomial::compose_affine(Complex scale, Complex shift) const {
  // Horner in polynomial arithmetic: acc <- acc * (scale x + shift) + c_k.
  std::vector<Complex> acc;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    std::vector<Complex> next(acc.size() + 1, Complex{0.0, 0.0});
    for (std::size_t k = 0; k < acc.size(); ++k) {
      next[k] += acc[k] * shift;
      next[k + 1] += acc[k] * scale;
    }
    next[0] += *it;
    acc = std::move(next);
  }
  if (acc.empty()) acc.push_back(Complex{0.0, 0.0});
  return Polynomial(std::move(acc));
}

std::vector<Complex> Polynomial::roots() const {
  const int d = degree();
  require(d >= 0, ErrorCode::RootFindingFailure, "zero polynomial has no isolated roots");
  if (d == 0) return {};
  const Complex lead = coeffs_[d];
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(d, d);
  for (int k = 0; k < d; ++k) companion(0, k) = -coeffs_[d - 1 - k] / lead;
  for (int k = 1; k < d; ++k) companion(k, k - 1) = 1.0;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
  require(solver.info() == Eigen::Success, ErrorCode::RootFindingFailure,
          "companion eigenvalue iteration did not converge");
  const Polynomial dp = derivative();
  std::vector<Complex> roots(d);
  for (int k = 0; k < d; ++k) {
    Complex x = solver.eigenvalues()(k);
    for (int it = 0; it < 3; ++it) {
      const Complex slope = dp(x);
      if (std::abs(slope) == 0.0) break;
      const Complex step = (*this)(x) / slope;
      x -= step;
      if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(x))) break;
    }
    require(std::isfinite(x.real()) && std::isfinite(x.imag()), ErrorCode::RootFindingFailure,
            "root polishing diverged");
    roots[k] = x;
  }
  return roots;
}

}  // namespace rsv
