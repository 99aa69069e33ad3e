#pragma once

#include <functional>
#include <span>
#include <vector>

#include "rittlab/domains.hpp"
#include "rittlab/matrix.hpp"

namespace rittlab {

struct QuadConfig {
  int gauss_order = 16;
  int max_refinements = 12;
  double target_tol = 1e-9;
  double vertex_grading_ratio = 0.5;
  double min_spectral_clearance = 1e-4;
};

/// Gauss-Legendre nodes and weights on [0, 1].
struct GaussRule {
  std::vector<double> x, w;
};
const GaussRule& gauss_legendre(int order);

/// A contour node: position and dz weight (already multiplied by the
/// parametrisation derivative and the quadrature weight).
struct QuadNode {
  cplx z;
  cplx dz;
};

/// Composite Gauss nodes for refinement level `level`. Ungraded pieces get
/// 2^level equal panels. Pieces ending on the unit circle start from dyadic
/// layers toward that end; each level bisects every panel and adds two layers
/// at the end, so level l+1 always refines level l.
std::vector<QuadNode> contour_nodes(const PiecewiseContour& c, int level, const QuadConfig& cfg);

struct ResolventIntegral {
  std::vector<Matrix> values;
  std::vector<double> error_estimates;  // max(||I_l - I_{l-1}||_2, rounding bound) per function
  int level = 0;
  bool converged = false;
};

/// (1/2 pi i) \oint f_k(lambda) R(lambda, T) d lambda for each f_k, refining
/// until every value changes by at most tol * max(1, ||I||_2) between levels.
/// Throws SINGULAR when a node lands on the spectrum.
ResolventIntegral integrate_resolvent(const Matrix& t, const PiecewiseContour& c,
                                      std::span<const std::function<cplx(cplx)>> fs, const QuadConfig& cfg);

/// Adaptive Gauss integral of f(z) dz along one piece (recursive bisection).
cplx integrate_piece(const Piece& p, const std::function<cplx(cplx)>& f, double tol, int max_depth = 48);
/// Adaptive integral of f(z) |dz| along one piece.
double integrate_piece_abs(const Piece& p, const std::function<double(cplx)>& f, double tol, int max_depth = 48);

}  // namespace rittlab
