#include "rittlab/polynomial.hpp"

#include <algorithm>

namespace rittlab {

Polynomial::Polynomial(std::vector<cplx> coeffs) : c_(std::move(coeffs)) { trim(); }

void Polynomial::trim() {
  while (!c_.empty() && c_.back() == cplx{}) c_.pop_back();
}

Polynomial Polynomial::constant(cplx c) { return Polynomial({c}); }

Polynomial Polynomial::monomial(std::size_t k, cplx c) {
  std::vector<cplx> v(k + 1);
  v[k] = c;
  return Polynomial(std::move(v));
}

Polynomial Polynomial::vanishing_on(std::span<const cplx> points) {
  Polynomial p = constant(1.0);
  for (auto xi : points) p = p * Polynomial({xi, -1.0});
  return p;
}

cplx Polynomial::operator()(cplx z) const {
  cplx acc = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<cplx> d(c_.size() - 1);
  for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * static_cast<double>(k);
  return Polynomial(std::move(d));
}

Polynomial Polynomial::compose_affine(cplx a, cplx b) const {
  // Horner in the polynomial ring: acc = acc*(a + b z) + c_k
  Polynomial acc;
  const Polynomial lin({a, b});
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * lin + constant(*it);
  return acc;
}

double Polynomial::coeff_norm() const {
  double m = 0.0;
  for (auto z : c_) m = std::max(m, std::abs(z));
  return m;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
  trim();
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
  trim();
  return *this;
}

Polynomial& Polynomial::operator*=(cplx s) {
  for (auto& z : c_) z *= s;
  trim();
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<cplx> c(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  return Polynomial(std::move(c));
}

Matrix mat_poly(const Polynomial& phi, const Matrix& t) {
  const std::size_t n = t.dim();
  Matrix acc(n);
  const auto& c = phi.coeffs();
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    acc = acc * t;
    acc.add_identity(*it);
  }
  return acc;
}

}  // namespace rittlab
