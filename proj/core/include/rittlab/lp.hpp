#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rittlab/calculus.hpp"
#include "rittlab/domains.hpp"
#include "rittlab/linalg.hpp"
#include "rittlab/matrix.hpp"

namespace rittlab {

struct RegularOperator {
  Matrix t;
  double p = 2.0;
  double regular_norm = 0.0;
  Certificate certificate = Certificate::Lower;
  bool contractively_regular = false;  // regular_norm <= 1 + 1e-10
};

/// ||T||_r = || |T| ||_p, the norm of the entrywise modulus.
NormResult regular_norm(const Matrix& t, double p);
RegularOperator make_regular(Matrix t, double p);

struct SemigroupRow {
  std::size_t j = 0;
  double t = 0.0;
  double regular_norm = 0.0;  // || exp(-t A_j) ||_r
  double majorant = 0.0;      // e^{-t} e^{t ||T||_r}
  bool ok = false;            // regular_norm <= 1 + 1e-8
};

struct SemigroupReport {
  std::vector<SemigroupRow> rows;
  double max_norm = 0.0;
  bool all_ok = false;
};

/// exp(-t A_j), A_j = I - conj(xi_j) T, for every j and t. Throws NOT_CONTRACTIVE
/// unless T is contractively regular.
SemigroupReport semigroup_regular_check(const Matrix& t, const PeripheralSet& e, double p,
                                        std::span<const double> t_grid = {});

struct LpEnsembleConfig {
  std::size_t dim = 8;
  double p = 2.0;
  std::vector<int> cycle_orders{1};  // one cyclic permutation block per order
  double gap = 0.1;
  int count = 20;
  std::uint64_t seed = 0;
  bool symmetric_block = false;  // symmetric nonnegative remainder (normal samples)
  int max_attempts = 50;         // per sample
};

/// Cycle orders whose root-of-unity groups make up E. Throws UNREALIZABLE_E.
std::vector<int> cycle_orders_for(const PeripheralSet& e);
/// Union of the k-th roots of unity over the given orders.
PeripheralSet peripheral_set_for(std::span<const int> orders);

/// Direct sums of cyclic permutation blocks and a scaled nonnegative block,
/// conjugated by a random permutation. Every sample is Ritt_E and contractively
/// regular. Throws UNREALIZABLE_E when the blocks do not fit in dim.
std::vector<RegularOperator> ensemble_positive_ritt(const LpEnsembleConfig& cfg);

struct LpDomainRow {
  double s = 0.0;
  ConstantEstimate estimate;
};

struct LpSampleReport {
  double r_star = 0.0;
  double regular_norm = 0.0;
  std::vector<LpDomainRow> stolz;  // one per admissible s
  ConstantEstimate polygon;
  std::size_t polygon_vertices = 0;
  SemigroupReport semigroup;
  bool finite = false;
  bool degree_stable = false;  // growth below 10% from degree 25 to 50, every constant
};

struct LpExperimentReport {
  PeripheralSet e;
  std::vector<LpSampleReport> samples;
  bool all_finite = false;
  bool all_stable = false;
  bool all_semigroup_ok = false;
};

LpExperimentReport positive_ensemble_experiment(const LpEnsembleConfig& cfg, std::span<const double> s_grid,
                                                int max_degree = 50, const ProbeConfig& probe = {});

}  // namespace rittlab
