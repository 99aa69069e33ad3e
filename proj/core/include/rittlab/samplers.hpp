#pragma once

#include <cstdint>
#include <random>

#include "rittlab/domains.hpp"
#include "rittlab/matrix.hpp"

namespace rittlab {

/// Complex Gaussian entries, variance 1/dim per component.
Matrix random_matrix(std::size_t dim, std::mt19937_64& rng);

/// G / ||G||_2 scaled by a factor drawn from [min_scale, 1].
Matrix random_contraction(std::size_t dim, std::mt19937_64& rng, double min_scale = 0.5);

struct RittSamplerConfig {
  double inner_radius = 0.9;  // inner eigenvalues drawn from D(0, inner_radius)
  double coupling = 0.3;      // S = I + coupling G / ||G||_2
  int extra_peripheral = 0;   // repeated eigenvalues on E beyond one per point
};

/// S D S^{-1} with D diagonal: every xi_j once (plus repeats), the rest inside
/// the disc. Diagonalisable, hence Ritt_E.
Matrix random_ritt_e(std::size_t dim, const PeripheralSet& e, std::mt19937_64& rng, const RittSamplerConfig& cfg = {});

/// N points on the circle with pairwise separation at least `min_sep`.
PeripheralSet random_peripheral_set(std::size_t n, std::mt19937_64& rng, double min_sep = 0.5);

/// Jordan block of size m at lambda.
Matrix jordan_block(cplx lambda, std::size_t m);

}  // namespace rittlab
