#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "rittlab/domains.hpp"
#include "rittlab/matrix.hpp"
#include "rittlab/polynomial.hpp"
#include "rittlab/quadrature.hpp"

namespace rittlab {

/// A holomorphic function given either as a polynomial or as a black-box evaluator.
class Analytic {
 public:
  Analytic(Polynomial p);  // NOLINT(google-explicit-constructor)
  Analytic(std::function<cplx(cplx)> f);  // NOLINT(google-explicit-constructor)

  cplx operator()(cplx z) const { return poly_ ? (*poly_)(z) : fn_(z); }
  bool is_polynomial() const noexcept { return poly_.has_value(); }
  const Polynomial& polynomial() const { return *poly_; }

 private:
  std::optional<Polynomial> poly_;
  std::function<cplx(cplx)> fn_;
};

struct FCResult {
  Matrix value;
  double error_estimate = 0.0;
  PiecewiseContour contour_used;
  double u = 0.0;
  int levels = 0;
  bool converged = true;
  bool membership_sampled = false;  // vanishing on E checked by sampling only
};

/// Throws NOT_H0 unless phi vanishes on E (polynomials: |phi(xi_j)| <= 1e-10 scale;
/// black boxes: sampled radial decay toward each xi_j).
void check_h0(const Analytic& phi, const PeripheralSet& e);

/// Radius of the contour dE_u used for a Ritt_E matrix of type r and target s.
/// Starts at (r+s)/2 and moves inside (r,s) until every non-peripheral
/// eigenvalue is at least cfg.min_spectral_clearance from the contour.
/// Throws SPECTRAL_CLEARANCE when no candidate qualifies.
double choose_contour_radius(std::span<const cplx> eigs, const PeripheralSet& e, double r, double s,
                             const QuadConfig& cfg);

/// phi(T) = (1/2 pi i) \oint_{dE_u} phi(lambda) R(lambda, T) d lambda.
/// `type_r` overrides the computed type of T. Throws NOT_H0, SPECTRAL_CLEARANCE,
/// NOT_RITT_E; NO_CONVERGENCE only when `throw_on_no_convergence` is set, the
/// partial value is otherwise returned with converged = false.
FCResult fc_contour(const Analytic& phi, const Matrix& t, const PeripheralSet& e, double s, const QuadConfig& cfg = {},
                    std::optional<double> type_r = std::nullopt, std::optional<double> u = std::nullopt,
                    bool throw_on_no_convergence = false);

/// Several functions on one shared contour (one resolvent solve per node).
std::vector<FCResult> fc_contour_many(std::span<const Analytic> phis, const Matrix& t, const PeripheralSet& e, double s,
                                      const QuadConfig& cfg = {}, std::optional<double> type_r = std::nullopt,
                                      std::optional<double> u = std::nullopt);

/// Dunford-Riesz integral over the boundary of a convex polygon enclosing sigma(S).
/// Throws SPECTRUM_NOT_ENCLOSED, and NO_CONVERGENCE when refinement runs out.
FCResult fc_dunford_polygon(const Analytic& phi, const Matrix& s, const ConvexPolygon& delta, const QuadConfig& cfg = {});

struct LagrangeSplit {
  std::vector<Polynomial> basis;  // L_j, L_j(xi_k) = delta_jk
  Polynomial psi0;
  Polynomial psi1;
  double node_condition = 0.0;  // kappa_1 of the Vandermonde system
};

/// Throws ILL_CONDITIONED_NODES when the Vandermonde condition exceeds 1e10.
LagrangeSplit lagrange_split(const Polynomial& psi, const PeripheralSet& e);

/// Per-path Cauchy integrals phi_i(z) = (1/2 pi i) \int_{gamma_i} phi(l)/(l - z) dl,
/// where the boundary of delta is cut at the vertices listed in `split`
/// (one closed path when empty). Result[i][k] belongs to path i and sample k.
/// Throws SAMPLE_ON_PATH for samples within 1e-3 of the boundary.
std::vector<std::vector<cplx>> cauchy_split(const Analytic& phi, const ConvexPolygon& delta,
                                            std::span<const std::size_t> split, std::span<const cplx> z_samples,
                                            double tol = 1e-13);

/// Q(lambda, z) = sum_i lambda^i q_i(z).
struct BivariatePolynomial {
  std::vector<Polynomial> by_lambda;
  double remainder = 0.0;  // largest coefficient of P - (lambda - z) Q

  cplx operator()(cplx lambda, cplx z) const;
  /// Q(lambda, T)
  Matrix at(cplx lambda, const Matrix& t) const;
};

/// Division of prod(xi_j - lambda) - prod(xi_j - z) by (lambda - z).
BivariatePolynomial seifert_Q(const PeripheralSet& e);

struct SeifertResidual {
  double residual = 0.0;
  double scale = 0.0;
  double relative() const { return residual / std::max(scale, 1e-300); }
};

/// Both sides of lambda^n p(lambda) - T^n p(T)
///   = (lambda - T) p(lambda) sum_{k<n} lambda^{n-1-k} T^k + T^n (lambda - T) Q(lambda, T),
/// p = prod(xi_j - .). `scale` is the largest norm among the four terms.
SeifertResidual seifert_residual(const Matrix& t, const PeripheralSet& e, const BivariatePolynomial& q, cplx lambda,
                                 int n);

// ---------------------------------------------------------------------------
// Functional-calculus constants

using Region = std::variant<StolzDomain, ConvexPolygon, UnitDisc>;

struct ProbeConfig {
  int max_degree = 50;
  int random_per_degree = 4;
  int peak_directions = 8;
  int boundary_samples = 4096;
  std::uint64_t seed = 0;
};

struct ConstantEstimate {
  double k_lower = 0.0;
  std::vector<int> degrees;        // ascending
  std::vector<double> k_by_degree;  // max over members of degree <= degrees[i]
  std::string argmax;              // short description of the best member
  double growth(int d0, int d1) const;  // K(d1)/K(d0) - 1
};

/// Sup of |phi| over the closure of a region, from its boundary.
double boundary_sup(const Analytic& phi, const Region& region, int samples = 4096);

/// Lower estimate of the functional-calculus constant of T over `region` in the ell^p operator norm.
ConstantEstimate calculus_constant(const Matrix& t, const Region& region, double p, const ProbeConfig& cfg = {});

/// g(z) = c + sum_k a_k / (z - p_k)
struct Rational {
  cplx c;
  std::vector<cplx> residues;
  std::vector<cplx> poles;

  cplx operator()(cplx z) const;
  /// g(a + b z)
  Rational compose_affine(cplx a, cplx b) const;
  /// c I + sum a_k (A - p_k)^{-1}
  Matrix at(const Matrix& a) const;
};

/// Sup over the closed sector of half-angle theta about the positive axis,
/// sampled on both boundary rays up to |lambda| = 1e3 (plus the value at infinity).
double sector_sup(const Rational& g, double theta);

/// Random rationals with 1-3 poles outside the closed sector.
std::vector<Rational> random_rationals(double theta, int count, std::uint64_t seed);

struct RhoShiftReport {
  double max_ratio = 0.0;         // over rho_grid and the ensemble
  double k_reference = 0.0;       // calculus constant of A on the ensemble and its compositions
  double composition_residual = 0.0;
  std::vector<double> ratio_by_rho;
  bool bounded = false;  // max_ratio <= k_reference (1 + 1e-2)
};

/// Throws POLE_IN_SECTOR if any g has a pole in the closed sector.
RhoShiftReport rho_shift_check(const Matrix& a, double theta, std::span<const Rational> g,
                               std::span<const double> rho_grid);

}  // namespace rittlab
