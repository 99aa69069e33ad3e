#pragma once

#include <functional>
#include <span>
#include <vector>

#include "rittlab/calculus.hpp"
#include "rittlab/domains.hpp"
#include "rittlab/matrix.hpp"
#include "rittlab/polynomial.hpp"

namespace rittlab {

/// Theta_i, Phi_i, Psi_i on the right half-plane, i = 0..size-1.
struct SectorFamily {
  std::function<cplx(int, cplx)> theta, phi, psi;
  int size = 0;
  int truncation = 0;        // M
  double decay_s = 0.0;      // claimed exponent
  double decay_c = 0.0;      // claimed constant, valid on the window
  double window_min = 0.0;   // |lambda| range on which the certificate was checked
  double window_max = 0.0;
  double floor_value = 0.0;  // sampled inf |h| on the window
};

struct FamilyConfig {
  double floor = 1e-2;
  double angle_margin = 1e-2;  // rays of Sigma_{pi/2 - margin}
  int radial_samples = 400;
  int angular_samples = 9;
};

/// sigma(l) = l^{1/3} (1+l)^{-2/3}, rho = sigma^3, h = sum_{|n|<=M} rho(2^-n l),
/// Theta_n = sigma(2^-n l)/h, Phi_n = Psi_n = sigma(2^-n l).
/// Throws FLOOR_FAILURE when inf |h| on the sampled window drops below the floor.
SectorFamily default_family(int m, const FamilyConfig& cfg = {});

/// Principal-branch sigma.
cplx family_sigma(cplx lambda);

struct MultiIndexTerm {
  std::vector<int> iota;
  std::function<cplx(cplx)> theta, phi, psi;
};

/// theta_iota(z) = prod_j Theta_{i_j}(1 - conj(xi_j) z), and likewise phi, psi.
MultiIndexTerm compose_multipoint(const SectorFamily& family, const PeripheralSet& e, std::span<const int> iota);

/// All multi-indices in [0, size)^N, ordered by distance from the centre index
/// (max_j |i_j - M|), then lexicographically.
std::vector<std::vector<int>> multi_indices(const SectorFamily& family, std::size_t n);

struct UnityReport {
  double sup_sum_phi = 0.0;  // (i)
  double sup_sum_psi = 0.0;
  double sup_theta = 0.0;    // (ii)
  std::vector<double> boundary_integrals;  // (iii), one per multi-index
  double integral_max_over_median = 0.0;
  double unity_defect = 0.0;               // (iv)
  double pullback_residual = 0.0;          // vertex pieces against the pulled-back integral
  double excised_radius = 0.0;             // vertex neighbourhoods left out of (iii)
  std::size_t terms = 0;
};

/// Checks (i)-(iv) for the indices with |i - M| <= truncation. Throws
/// FAMILY_INVALID for an uncertified family.
UnityReport verify_unity(const SectorFamily& family, const PeripheralSet& e, double r, std::span<const cplx> z_grid,
                         int truncation);

struct PairingReport {
  std::vector<std::size_t> n_terms;
  std::vector<double> truncation_error;  // ||h_n(T) - h(T)||_2 per n_terms
  double r_bound = 0.0;                  // lower estimate for {h(T) theta_iota(T)}
  double h_sup = 0.0;                    // ||h||_{inf, E_s}
  double max_pairing = 0.0;              // max |<h_n(T) x, y>| over samples
  double max_cs_bound = 0.0;             // Rad-norm Cauchy-Schwarz middle term
  double max_bound = 0.0;                // R * ||sum eps phi x|| * ||sum eps psi^* y||
  bool chain_holds = false;              // pairing <= cs <= bound on every sample
  double bound_over_sup = 0.0;
};

struct PairingConfig {
  double s = 0.9;
  double p = 2.0;
  int vector_samples = 8;
  std::uint64_t seed = 0;
  QuadConfig quad;
};

/// Partial expansions h_n(T) = sum over the first n terms of (h theta phi psi)(T)
/// and the pairing bound; the last entry of n_terms is used for the bound.
PairingReport pairing_estimate(const Polynomial& h, const Matrix& t, const SectorFamily& family,
                               const PeripheralSet& e, std::span<const std::size_t> n_terms,
                               const PairingConfig& cfg = {});

}  // namespace rittlab
