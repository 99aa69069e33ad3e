#include "rittlab/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "rittlab/error.hpp"

namespace rittlab {

Matrix::Matrix(std::size_t dim, std::vector<cplx> entries) : n_(dim), a_(std::move(entries)) {
  if (a_.size() != n_ * n_) {
    throw Error(Errc::InvalidArgument, "matrix needs dim*dim entries");
  }
  if (!is_finite()) {
    throw Error(Errc::InvalidArgument, "matrix entries must be finite");
  }
}

Matrix Matrix::identity(std::size_t dim) {
  Matrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diagonal(std::span<const cplx> diag) {
  Matrix m(diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

Matrix Matrix::adjoint() const {
  Matrix m(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) m(j, i) = std::conj((*this)(i, j));
  return m;
}

Matrix Matrix::transpose() const {
  Matrix m(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) m(j, i) = (*this)(i, j);
  return m;
}

Matrix Matrix::modulus() const {
  Matrix m(n_);
  for (std::size_t k = 0; k < a_.size(); ++k) m.a_[k] = std::abs(a_[k]);
  return m;
}

bool Matrix::is_finite() const {
  return std::all_of(a_.begin(), a_.end(),
                     [](cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

bool Matrix::is_nonnegative() const {
  return std::all_of(a_.begin(), a_.end(), [](cplx z) { return z.imag() == 0.0 && z.real() >= 0.0; });
}

Vector Matrix::apply(std::span<const cplx> x) const {
  Vector y(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    cplx s = 0.0;
    const cplx* r = a_.data() + i * n_;
    for (std::size_t j = 0; j < n_; ++j) s += r[j] * x[j];
    y[i] = s;
  }
  return y;
}

Vector Matrix::apply_adjoint(std::span<const cplx> y) const {
  Vector x(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    const cplx* r = a_.data() + i * n_;
    for (std::size_t j = 0; j < n_; ++j) x[j] += std::conj(r[j]) * y[i];
  }
  return x;
}

Matrix& Matrix::operator+=(const Matrix& other) {
  for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += other.a_[k];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& other) {
  for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= other.a_[k];
  return *this;
}

Matrix& Matrix::operator*=(cplx s) {
  for (auto& v : a_) v *= s;
  return *this;
}

Matrix& Matrix::add_identity(cplx s) {
  for (std::size_t i = 0; i < n_; ++i) (*this)(i, i) += s;
  return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  const std::size_t n = a.n_;
  Matrix c(n);
  for (std::size_t i = 0; i < n; ++i) {
    cplx* ci = c.a_.data() + i * n;
    for (std::size_t k = 0; k < n; ++k) {
      const cplx aik = a.a_[i * n + k];
      if (aik == cplx{}) continue;
      const cplx* bk = b.a_.data() + k * n;
      for (std::size_t j = 0; j < n; ++j) ci[j] += aik * bk[j];
    }
  }
  return c;
}

double norm_frobenius(const Matrix& a) {
  double s = 0.0;
  for (auto z : a.data()) s += std::norm(z);
  return std::sqrt(s);
}

double norm_one(const Matrix& a) {
  double best = 0.0;
  for (std::size_t j = 0; j < a.dim(); ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) s += std::abs(a(i, j));
    best = std::max(best, s);
  }
  return best;
}

double norm_inf(const Matrix& a) {
  double best = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    double s = 0.0;
    for (auto z : a.row(i)) s += std::abs(z);
    best = std::max(best, s);
  }
  return best;
}

double max_abs_entry(const Matrix& a) {
  double best = 0.0;
  for (auto z : a.data()) best = std::max(best, std::abs(z));
  return best;
}

double vector_norm(std::span<const cplx> x, double p) {
  if (std::isinf(p)) {
    double m = 0.0;
    for (auto z : x) m = std::max(m, std::abs(z));
    return m;
  }
  // Scale by the largest modulus so |x_k/m|^p never overflows for large p.
  double m = 0.0;
  for (auto z : x) m = std::max(m, std::abs(z));
  if (m == 0.0) return 0.0;
  double s = 0.0;
  for (auto z : x) s += std::pow(std::abs(z) / m, p);
  return m * std::pow(s, 1.0 / p);
}

// ---------------------------------------------------------------------------
// LU

LuDecomposition::LuDecomposition(Matrix a) : lu_(std::move(a)), perm_(lu_.dim()) {
  const std::size_t n = lu_.dim();
  std::iota(perm_.begin(), perm_.end(), std::size_t{0});
  const double scale = std::max(norm_one(lu_), std::numeric_limits<double>::min());
  const double tiny = static_cast<double>(std::max<std::size_t>(n, 1)) *
                      std::numeric_limits<double>::epsilon() * scale;
  min_pivot_ = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    double best = std::abs(lu_(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      const double v = std::abs(lu_(i, k));
      if (v > best) {
        best = v;
        piv = i;
      }
    }
    min_pivot_ = std::min(min_pivot_, best);
    if (best <= tiny) {
      singular_ = true;
      if (best == 0.0) continue;
    }
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(lu_(k, j), lu_(piv, j));
      std::swap(perm_[k], perm_[piv]);
    }
    const cplx inv = 1.0 / lu_(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const cplx f = lu_(i, k) * inv;
      lu_(i, k) = f;
      if (f == cplx{}) continue;
      for (std::size_t j = k + 1; j < n; ++j) lu_(i, j) -= f * lu_(k, j);
    }
  }
  if (n == 0) min_pivot_ = 0.0;
}

Vector LuDecomposition::solve(std::span<const cplx> b) const {
  const std::size_t n = lu_.dim();
  Vector x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[perm_[i]];
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) x[i] -= lu_(i, j) * x[j];
  for (std::size_t ii = n; ii-- > 0;) {
    for (std::size_t j = ii + 1; j < n; ++j) x[ii] -= lu_(ii, j) * x[j];
    x[ii] /= lu_(ii, ii);
  }
  return x;
}

Matrix LuDecomposition::solve(const Matrix& b) const {
  const std::size_t n = lu_.dim();
  Matrix x(n);
  // Row operations on all right-hand sides at once.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) x(i, j) = b(perm_[i], j);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < i; ++k) {
      const cplx f = lu_(i, k);
      if (f == cplx{}) continue;
      for (std::size_t j = 0; j < n; ++j) x(i, j) -= f * x(k, j);
    }
  for (std::size_t ii = n; ii-- > 0;) {
    for (std::size_t k = ii + 1; k < n; ++k) {
      const cplx f = lu_(ii, k);
      if (f == cplx{}) continue;
      for (std::size_t j = 0; j < n; ++j) x(ii, j) -= f * x(k, j);
    }
    const cplx inv = 1.0 / lu_(ii, ii);
    for (std::size_t j = 0; j < n; ++j) x(ii, j) *= inv;
  }
  return x;
}

Matrix LuDecomposition::inverse() const { return solve(Matrix::identity(lu_.dim())); }

}  // namespace rittlab
