#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace rittlab {

using cplx = std::complex<double>;
using Vector = std::vector<cplx>;

/// Dense square complex matrix stored row-major.
///
/// Every operator in the library (T, A_j = I - conj(xi_j) T, resolvents,
/// functional-calculus values) is one of these. Construction from raw
/// entries rejects non-finite values.
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(std::size_t dim) : n_(dim), a_(dim * dim) {}
  Matrix(std::size_t dim, std::vector<cplx> entries);

  static Matrix identity(std::size_t dim);
  static Matrix diagonal(std::span<const cplx> diag);

  std::size_t dim() const noexcept { return n_; }
  bool empty() const noexcept { return n_ == 0; }

  cplx& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

  std::span<const cplx> data() const noexcept { return a_; }
  std::span<cplx> data() noexcept { return a_; }
  std::span<const cplx> row(std::size_t i) const { return {a_.data() + i * n_, n_}; }

  Matrix adjoint() const;
  Matrix transpose() const;
  /// Entrywise modulus |T|.
  Matrix modulus() const;

  bool is_finite() const;
  /// Real, entrywise >= 0 (imaginary parts exactly zero).
  bool is_nonnegative() const;

  Vector apply(std::span<const cplx> x) const;
  Vector apply_adjoint(std::span<const cplx> y) const;

  Matrix& operator+=(const Matrix& other);
  Matrix& operator-=(const Matrix& other);
  Matrix& operator*=(cplx s);
  /// this += s * I
  Matrix& add_identity(cplx s);

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, cplx s) { return a *= s; }
  friend Matrix operator*(cplx s, Matrix a) { return a *= s; }
  friend Matrix operator*(const Matrix& a, const Matrix& b);

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<cplx> a_;
};

double norm_frobenius(const Matrix& a);
double norm_one(const Matrix& a);  // max column sum
double norm_inf(const Matrix& a);  // max row sum
double max_abs_entry(const Matrix& a);

/// ell^p norm of a vector, p in [1, inf].
double vector_norm(std::span<const cplx> x, double p);

/// Partially pivoted LU factorisation of a square matrix.
class LuDecomposition {
 public:
  explicit LuDecomposition(Matrix a);

  /// True when a pivot fell below dim * eps * ||A||_1.
  bool singular() const noexcept { return singular_; }
  double min_pivot() const noexcept { return min_pivot_; }

  Vector solve(std::span<const cplx> b) const;
  Matrix solve(const Matrix& b) const;
  Matrix inverse() const;

 private:
  Matrix lu_;
  std::vector<std::size_t> perm_;
  bool singular_ = false;
  double min_pivot_ = 0.0;
};

/// Singular values in descending order (one-sided Jacobi).
std::vector<double> singular_values(const Matrix& a);

struct TopSingular {
  double value = 0.0;
  Vector right;  // unit ell^2 vector v with ||A v|| = value
};
TopSingular top_singular(const Matrix& a);

/// Spectral norm ||A||_2.
double norm2(const Matrix& a);

}  // namespace rittlab
