#pragma once

#include <span>
#include <string>
#include <vector>

#include "rittlab/calculus.hpp"
#include "rittlab/domains.hpp"
#include "rittlab/linalg.hpp"
#include "rittlab/matrix.hpp"
#include "rittlab/polygon.hpp"

namespace rittlab {

/// Sampling grid on the annulus 1 < |z| < outer.
struct SamplerConfig {
  int k_max = 20;             // radii 1 + 2^-k, k = 1..k_max
  int angular = 256;          // uniform angles per radius
  int vertex_refine = 24;     // extra angles arg(xi) +- 2^-m, m = 1..vertex_refine
  double outer = 2.0;         // radii are kept below this
  int slope_k_min = 10;       // growth exponents fit on k in [slope_k_min, k_max]
};

/// The grid itself (deterministic order).
std::vector<cplx> annulus_grid(const PeripheralSet& e, const SamplerConfig& cfg = {});

struct ResolventConstant {
  double c_hat = 0.0;
  cplx argmax;
  std::vector<double> exponents;  // per xi_j: -slope of log||R|| against log dist
  std::vector<cplx> z;            // samples, for export
  std::vector<double> values;     // prod|xi_j - z| ||R(z,T)||_p
};

/// Sampled sup of prod_j |xi_j - z| ||R(z,T)||_p over the annulus grid.
ResolventConstant resolvent_constant(const Matrix& t, const PeripheralSet& e, double p = 2.0,
                                    const SamplerConfig& cfg = {});
/// Same on explicit sample points.
ResolventConstant resolvent_constant_on(const Matrix& t, const PeripheralSet& e, double p, std::span<const cplx> z);

struct FdVerdict {
  bool ritt = false;
  bool near_boundary = false;  // eigenvalue in (1 - tol, 1 + tol) away from E
  std::string reason;          // empty when ritt
  Spectrum spectrum;
};

/// Finite-dimensional test: sigma(T) in the closed disc, unimodular part
/// within tol of E and semisimple. Throws SPECTRUM_FAILED when the
/// eigenvalue iteration fails.
FdVerdict is_ritt_e_fd(const Matrix& t, const PeripheralSet& e, double tol = 1e-6);

/// Smallest r with sigma(T) in the closure of E_r. Throws NOT_RITT_E.
double ritt_type(const Matrix& t, const PeripheralSet& e, double tol = 1e-6);

struct RittReport {
  bool is_ritt = false;
  double c_hat = 0.0;
  double r_star = 1.0;  // only meaningful when is_ritt
  bool oracle_verdict = false;
  bool sampling_verdict = false;  // exponents <= 1.1 and spectral inclusion
  std::vector<double> growth_exponents;
  FdVerdict fd;
};

RittReport classify(const Matrix& t, const PeripheralSet& e, double p = 2.0, const SamplerConfig& cfg = {});

/// Peripheral set read off the spectrum: eigenvalues within tol of the circle.
/// Throws DEGENERATE when clusters are ambiguous (closer than 1e-8).
PeripheralSet auto_peripheral_set(const Matrix& t, double tol = 1e-6);

struct SectorialReport {
  double omega_hat = 0.0;
  double spectral_angle = 0.0;  // max |arg mu| over nonzero eigenvalues of A_j
  std::vector<double> nu;
  std::vector<double> k_nu;  // infinity where a ray meets the spectrum
  double transfer1_residual = 0.0;
  double transfer3_residual = 0.0;
  int samples = 0;
};

struct SectorialConfig {
  int per_ray = 200;
  double t_min = 1e-4;
  double t_max = 1e3;
  double p = 2.0;
  double k_cap = 1e6;  // K_nu above this counts as unstable
};

/// K_nu = sup ||lambda R(lambda, A_j)|| outside the sector of half-angle nu,
/// A_j = I - conj(xi_j) T. Every sample is checked against the transfer
/// identities; throws TRANSFER_VIOLATION past 1e-9 relative.
SectorialReport sectorial_constant(const Matrix& t, const PeripheralSet& e, std::size_t j,
                                   std::span<const double> nu_grid, const SectorialConfig& cfg = {});

std::vector<double> default_nu_grid();

struct TransferResiduals {
  double transfer1 = 0.0;
  double transfer3 = 0.0;
};
TransferResiduals transfer_residuals(const Matrix& t, cplx xi, cplx lambda, cplx z);

struct PowerCertificate {
  double c0 = 0.0;
  double c1 = 0.0;
  double c_q = 0.0;
  double apriori_bound = 0.0;
  double c_hat = 0.0;
  bool consistent = false;  // c_hat <= apriori_bound (1 + 1e-2)
  PowerBounds sequences;
};

/// Throws DIVERGENT_SEQUENCES when the power sequences blow past 1e15.
PowerCertificate power_certificate(const Matrix& t, const PeripheralSet& e, double p, int nmax,
                                  const SamplerConfig& cfg = {});

/// sup over |lambda| <= 2 of ||Q(lambda, T)||_p (attained on |lambda| = 2).
double seifert_sup(const Matrix& t, const BivariatePolynomial& q, double p, int samples = 1000);

struct GammaRow {
  int n = 0;
  double residual = 0.0;        // ||I - T^n||_2 / max(1, ||T^n||_2)
  double error_estimate = 0.0;
  bool converged = false;
  double small_circle = 0.0;    // max_j n \int_{gamma_j} |l|^{n-1} |dl|
  double outer_arcs = 0.0;      // n \int over the outer arcs of |l|^{n-1} |dl|
  double outer_bound = 0.0;     // 2 pi n s^{n-1}
  double weighted = 0.0;        // \int_{Gamma_n} |l|^n / prod|l - xi_j| |dl|
  double power_integral = 0.0;  // n \int_{Gamma_n} |l|^{n-1} |dl|
};

struct GammaReport {
  int n0 = 0;
  std::vector<GammaRow> rows;
};

/// T^n recovered by quadrature over Gamma_n. Throws N_TOO_SMALL.
GammaReport gamma_n_reconstruction(const Matrix& t, const PeripheralSet& e, double s, std::span<const int> n_list,
                                   const QuadConfig& cfg = {});

/// build_polygon on a certified matrix. Throws NOT_RITT_E.
PolygonResult certified_polygon(const Matrix& t, const PeripheralSet& e, const PolygonConfig& cfg = {});

}  // namespace rittlab
