#pragma once

#include <span>
#include <vector>

#include "rittlab/matrix.hpp"

namespace rittlab {

/// Polynomial with complex coefficients, ascending degree, trailing zeros trimmed.
/// The zero polynomial has no coefficients and degree -1.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<cplx> coeffs);
  static Polynomial constant(cplx c);
  static Polynomial monomial(std::size_t k, cplx c = 1.0);
  /// prod_j (xi_j - z)
  static Polynomial vanishing_on(std::span<const cplx> points);

  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const noexcept { return c_.empty(); }
  const std::vector<cplx>& coeffs() const noexcept { return c_; }
  cplx coeff(std::size_t k) const { return k < c_.size() ? c_[k] : cplx{}; }

  cplx operator()(cplx z) const;
  Polynomial derivative() const;
  /// p(a + b z)
  Polynomial compose_affine(cplx a, cplx b) const;
  /// Largest coefficient modulus (0 for the zero polynomial).
  double coeff_norm() const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(cplx s);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, cplx s) { return a *= s; }
  friend Polynomial operator*(cplx s, Polynomial a) { return a *= s; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  bool operator==(const Polynomial&) const = default;

 private:
  void trim();
  std::vector<cplx> c_;
};

/// phi(T) by Horner's rule.
Matrix mat_poly(const Polynomial& phi, const Matrix& t);

}  // namespace rittlab
