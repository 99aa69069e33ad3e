#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "rittlab/domains.hpp"

namespace rittlab {

struct PolygonConfig {
  std::optional<double> theta;        // outer sector angle at each xi_j; searched when empty
  std::optional<double> theta_prime;  // sector angle at intermediate points; searched when empty
  int max_points_per_gap = 64;
  int membership_samples = 2000;
  std::uint64_t seed = 0;
  double peripheral_tol = 1e-6;
};

/// Grid used for both angle searches: pi/2 - 2^-k, k = 2..10.
std::vector<double> polygon_theta_grid();

struct PolygonResult {
  ConvexPolygon delta;   // {zeta_i, d_i} (convex hull when `convexified`)
  ConvexPolygon delta0;  // {zeta_i, c_i}
  double theta = 0.0;
  double theta_prime = 0.0;
  double r = 0.0;  // radius carrying the intermediate points
  std::vector<cplx> anchors;   // zeta_i, counterclockwise
  std::vector<double> angles;  // mu_i
  std::vector<bool> peripheral_anchor;
  std::vector<cplx> meets;  // c_i (between zeta_i and zeta_{i+1})
  std::vector<cplx> lifts;  // d_i = lift_vertex(c_i)
  std::vector<int> points_per_gap;
  std::vector<std::size_t> split_vertices;  // indices into delta.vertices where the Cauchy split cuts
  bool convexified = false;
  double epsilon = 0.0;
  int membership_disagreements = 0;
  bool spectrum_enclosed = false;
  bool circle_meets_only_e = false;
  double enclosed_s = 0.0;  // D(0,s), hence E_s, lies inside delta

  std::vector<Sector> sectors() const;
};

/// Constructive polygon for a spectrum sigma inside D U E. Errors:
/// NOT_RITT_E (spectrum leaves the closed disc away from E),
/// NO_ADMISSIBLE_THETA, COVERAGE_FAILURE.
PolygonResult build_polygon(std::span<const cplx> spectrum, const PeripheralSet& e, const PolygonConfig& cfg = {});

}  // namespace rittlab
