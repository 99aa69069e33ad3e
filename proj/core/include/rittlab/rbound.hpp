#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rittlab/classify.hpp"
#include "rittlab/matrix.hpp"

namespace rittlab {

enum class RadMode { Exact, MonteCarlo };

struct RadSample {
  std::vector<Vector> vectors;
  double p = 2.0;
  RadMode mode = RadMode::Exact;
  int mc_trials = 4096;
  std::uint64_t seed = 0;
};

struct RadNorm {
  double value = 0.0;
  double std_error = 0.0;  // zero in exact mode
};

/// (E ||sum eps_i x_i||_p^2)^{1/2}. Exact mode enumerates 2^{n-1} sign
/// patterns (TOO_MANY_EXACT past n = 20); Monte Carlo reports a standard error.
RadNorm rademacher_norm(const RadSample& sample);

struct SearchConfig {
  int n_max = 8;
  int restarts = 4;
  int ascent_sweeps = 20;
  int candidate_ops = 12;  // operators with the largest norms used for n >= 2
  std::uint64_t seed = 0;
};

struct RBoundEstimate {
  double value = 0.0;
  std::vector<std::size_t> ops;  // operator index per term
  std::vector<Vector> vectors;   // x_i
  RadMode mode = RadMode::Exact;
  std::uint64_t seed = 0;
  std::size_t family_size = 0;
};

/// Best evaluated ratio ||sum eps_i T_i x_i|| / ||sum eps_i x_i|| (Rad norms),
/// a lower bound for the R-bound of the family.
RBoundEstimate rbound_lower(std::span<const Matrix> family, double p, const SearchConfig& cfg = {});

/// Ratio of a stored witness, recomputed from scratch.
double evaluate_witness(std::span<const Matrix> family, double p, const RBoundEstimate& w);

/// {prod(xi_j - z) R(z,T)} on the annulus grid.
std::vector<Matrix> ritt_family(const Matrix& t, const PeripheralSet& e, const SamplerConfig& grid);

/// R-bound lower estimate for the Ritt family. Throws NOT_RITT_E.
RBoundEstimate r_ritt_lower(const Matrix& t, const PeripheralSet& e, double p, const SamplerConfig& grid = {},
                            const SearchConfig& cfg = {});

}  // namespace rittlab
