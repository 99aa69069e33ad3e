#pragma once

#include <optional>
#include <span>
#include <vector>

#include "rittlab/matrix.hpp"
#include "rittlab/polynomial.hpp"

namespace rittlab {

inline constexpr double kPi = 3.14159265358979323846;

/// Finite subset of the unit circle, sorted counterclockwise by principal
/// argument in (-pi, pi].
class PeripheralSet {
 public:
  PeripheralSet() = default;
  /// Throws INVALID_ARGUMENT off the circle (||xi|-1| > 1e-12) and
  /// DEGENERATE for points closer than 1e-8.
  explicit PeripheralSet(std::vector<cplx> points);
  static PeripheralSet roots_of_unity(int k, cplx rotation = 1.0);

  std::size_t size() const noexcept { return pts_.size(); }
  bool empty() const noexcept { return pts_.empty(); }
  const cplx& operator[](std::size_t i) const { return pts_[i]; }
  std::span<const cplx> points() const noexcept { return pts_; }
  double arg(std::size_t i) const { return std::arg(pts_[i]); }

  /// e^{i beta} E
  PeripheralSet rotated(cplx w) const;
  /// prod_j |xi_j - z|
  double distance_product(cplx z) const;
  /// prod_j (xi_j - z)
  Polynomial vanishing_polynomial() const;
  /// Counterclockwise angular gap from xi_j to xi_{j+1} (2 pi when N = 1).
  double gap(std::size_t j) const;
  double min_separation() const;
  /// Index of a point within `tol` of z, if any.
  std::optional<std::size_t> nearest_within(cplx z, double tol) const;

 private:
  std::vector<cplx> pts_;
};

enum class PieceKind { Segment, Arc, Chord };

/// Oriented segment or circular arc. Arcs run from theta0 to theta1 about
/// `center` (theta1 > theta0 is counterclockwise).
struct Piece {
  PieceKind kind = PieceKind::Segment;
  cplx a, b;  // endpoints
  cplx center;
  double radius = 0.0;
  double theta0 = 0.0, theta1 = 0.0;
  bool grade_start = false, grade_end = false;  // endpoint on the unit circle

  static Piece segment(cplx a, cplx b, PieceKind kind = PieceKind::Segment);
  static Piece arc(cplx center, double radius, double theta0, double theta1);

  bool is_arc() const noexcept { return kind == PieceKind::Arc; }
  cplx at(double t) const;          // t in [0, 1]
  cplx derivative(double t) const;  // dz/dt
  double length() const;
  Piece reversed() const;
};

struct PiecewiseContour {
  std::vector<Piece> pieces;
  bool graded = false;

  double length() const;
  bool closed(double tol = 1e-12) const;
  PiecewiseContour reversed() const;
  /// `per_piece` points per piece, endpoints included once.
  std::vector<cplx> sample(int per_piece) const;
};

/// Interior of conv(D(0,r) U E) with its counterclockwise boundary.
struct StolzDomain {
  PeripheralSet e;
  double r = 0.0;
  std::vector<Piece> boundary;

  /// Distance from 0 to the boundary along the ray of angle psi.
  double radial_extent(double psi) const;
  bool contains(cplx z, bool closure = false) const;
};

StolzDomain build_stolz(const PeripheralSet& e, double r);

/// Sigma(xi, omega) = xi (1 - Sigma_omega): vertex xi, opening toward 0.
struct Sector {
  cplx vertex;
  double half_angle = 0.0;

  bool contains(cplx z, bool closure = false) const;
  /// xi (1 - t e^{-i omega}) for the '+' branch, xi (1 - t e^{i omega}) for '-'.
  cplx boundary_point(bool plus, double t) const;
};

/// Counterclockwise convex polygon.
struct ConvexPolygon {
  std::vector<cplx> vertices;

  ConvexPolygon() = default;
  /// With `validate`, throws INVALID_ARGUMENT unless strictly convex,
  /// counterclockwise and inside the closed unit disc.
  explicit ConvexPolygon(std::vector<cplx> v, bool validate = true);

  bool is_strictly_convex() const;
  bool contains(cplx z, bool closure = false) const;
  /// Distance from z to the boundary.
  double boundary_distance(cplx z) const;
  std::size_t size() const noexcept { return vertices.size(); }
};

/// Counterclockwise convex hull (collinear points dropped).
std::vector<cplx> convex_hull(std::vector<cplx> pts);

struct UnitDisc {};

enum class Orientation { Counterclockwise, Clockwise };

PiecewiseContour boundary_contour(const StolzDomain& d, Orientation o = Orientation::Counterclockwise);
PiecewiseContour boundary_contour(const ConvexPolygon& d, Orientation o = Orientation::Counterclockwise);
PiecewiseContour boundary_contour(UnitDisc, Orientation o = Orientation::Counterclockwise);

/// Winding number of a closed contour about z (z off the contour).
int winding_number(const PiecewiseContour& c, cplx z);
/// No two non-adjacent sampled chords intersect.
bool is_simple(const PiecewiseContour& c, int per_piece = 24);
/// Minimum distance from z to the contour (sampled, then locally exact for segments).
double contour_distance(const PiecewiseContour& c, cplx z);

struct GammaContour {
  PiecewiseContour contour;
  int n = 0;
  int n0 = 0;
  double alpha = 0.0;
  double small_radius = 0.0;
  std::vector<std::size_t> small_arcs;  // piece indices of gamma_j
  std::vector<std::size_t> outer_arcs;  // piece indices of gamma_{j,j+1}
  std::vector<std::size_t> segments;    // gamma_{j-}, gamma_{j+}
};

/// Least n for which the 4N pieces are pairwise non-crossing and the small discs disjoint.
int gamma_n_threshold(const PeripheralSet& e, double s);
/// Throws N_TOO_SMALL (detail = n0) for n < n0.
GammaContour gamma_n(const PeripheralSet& e, double s, int n);

struct HalflineMeet {
  cplx point;
  double t_plus = 0.0;
  double t_minus = 0.0;
};

/// Intersection of zeta1 (1 - t e^{-i mu1}) and zeta2 (1 - t' e^{i mu2}), t, t' > 0.
HalflineMeet halfline_intersection(cplx zeta1, double mu1, cplx zeta2, double mu2);

/// (c + c/|c|) / 2
cplx lift_vertex(cplx c);

/// Smallest r with every point of `eigs` in the closure of E_r (points on E
/// within `peripheral_tol` are skipped). Bisection floor and tolerance 1e-6.
/// Throws NOT_RITT_E when no r < 1 works.
double stolz_type(std::span<const cplx> eigs, const PeripheralSet& e, double peripheral_tol = 1e-6);

}  // namespace rittlab
