#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rittlab/matrix.hpp"
#include "rittlab/polynomial.hpp"

namespace rittlab {

struct ResolventOptions {
  double condition_cap = 1e12;
};

struct ResolventResult {
  Matrix value;
  double condition = 0.0;  // kappa_1 estimate of zI - T
  bool ill_conditioned = false;
};

/// R(z,T) = (zI - T)^{-1}. Throws SINGULAR when z sits on an eigenvalue to
/// working precision; returns with `ill_conditioned` set past the cap.
ResolventResult resolvent(const Matrix& t, cplx z, const ResolventOptions& opt = {});
/// Convenience: only the matrix, ignoring the conditioning flag.
Matrix resolvent_matrix(const Matrix& t, cplx z);

/// Raw eigenvalues (with repetition). Hessenberg reduction + shifted QR.
std::vector<cplx> eigenvalues(const Matrix& t, std::size_t max_sweeps = 0);

struct Eigenvalue {
  cplx value;
  int multiplicity = 1;
  bool semisimple = true;
};

struct SpectrumOptions {
  std::size_t max_dim = 512;
  double cluster_tolerance = 1e-5;
  double rank_tolerance = 1e-8;  // relative to ||T||_2
};

struct Spectrum {
  std::vector<Eigenvalue> eigenvalues;
  double cluster_tolerance = 0.0;

  double spectral_radius() const;
};

Spectrum spectrum(const Matrix& t, const SpectrumOptions& opt = {});

enum class Certificate { Exact, Lower };

struct NormOptions {
  int restarts = 8;
  std::uint64_t seed = 0;
  int max_iter = 500;
  double tol = 1e-13;
};

struct NormResult {
  double value = 0.0;
  Certificate certificate = Certificate::Lower;
  Vector maximizer;  // unit ell^p vector attaining `value`
};

/// ||T||_{p -> p}, p in (1, inf).
NormResult op_norm(const Matrix& t, double p, const NormOptions& opt = {});

/// e^A by Pade(13) scaling and squaring. OVERFLOW for ||A||_2 > 1e4.
Matrix mat_exp(const Matrix& a);

struct PowerBounds {
  double c0 = 0.0;
  double c1 = 0.0;
  std::vector<double> power_norms;       // ||T^n||, n = 0..nmax
  std::vector<double> difference_norms;  // n ||T^{n-1} prod(xi_j - T)||, n = 1..nmax (index n-1)
  bool overflow = false;
};

/// Sup estimates of ||T^n|| and n||T^{n-1} prod_j(xi_j - T)|| up to nmax.
/// Stops early (overflow = true) once a power norm exceeds 1e15; throws
/// OVERFLOW when `throw_on_overflow` is set.
PowerBounds power_and_difference_bounds(const Matrix& t, std::span<const cplx> e, double p, int nmax,
                                        bool throw_on_overflow = false);

/// Least-squares slope of log y against log x.
double loglog_slope(std::span<const double> x, std::span<const double> y);

}  // namespace rittlab
