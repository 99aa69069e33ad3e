#include "rittlab/domains.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rittlab/error.hpp"

namespace rittlab {
namespace {

constexpr double kTwoPi = 2.0 * kPi;
constexpr double kGeomTol = 1e-12;

double cross(cplx u, cplx v) { return u.real() * v.imag() - u.imag() * v.real(); }

// Angle in [0, 2 pi).
double wrap_positive(double a) {
  a = std::fmod(a, kTwoPi);
  if (a < 0) a += kTwoPi;
  return a;
}

double point_segment_distance(cplx z, cplx a, cplx b) {
  const cplx d = b - a;
  const double len2 = std::norm(d);
  if (len2 == 0.0) return std::abs(z - a);
  const double t = std::clamp(((z - a) * std::conj(d)).real() / len2, 0.0, 1.0);
  return std::abs(z - (a + t * d));
}

double point_piece_distance(cplx z, const Piece& p) {
  if (!p.is_arc()) return point_segment_distance(z, p.a, p.b);
  const double lo = std::min(p.theta0, p.theta1), hi = std::max(p.theta0, p.theta1);
  const cplx w = z - p.center;
  double psi = std::arg(w);
  psi = lo + wrap_positive(psi - lo);
  if (psi <= hi) return std::abs(std::abs(w) - p.radius);
  return std::min(std::abs(z - p.a), std::abs(z - p.b));
}

bool on_circle(cplx z) { return std::abs(std::abs(z) - 1.0) <= 1e-12; }

}  // namespace

// ---------------------------------------------------------------------------
// PeripheralSet

PeripheralSet::PeripheralSet(std::vector<cplx> points) : pts_(std::move(points)) {
  if (pts_.empty()) throw Error(Errc::InvalidArgument, "peripheral set must be nonempty");
  for (auto z : pts_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()) || std::abs(std::abs(z) - 1.0) > 1e-12)
      throw Error(Errc::InvalidArgument, "peripheral points must lie on the unit circle", std::abs(z));
  }
  std::sort(pts_.begin(), pts_.end(), [](cplx a, cplx b) { return std::arg(a) < std::arg(b); });
  if (pts_.size() > 1 && min_separation() <= 1e-8)
    throw Error(Errc::Degenerate, "peripheral points coincide", min_separation());
}

PeripheralSet PeripheralSet::roots_of_unity(int k, cplx rotation) {
  if (k < 1) throw Error(Errc::InvalidArgument, "roots_of_unity needs k >= 1", k);
  std::vector<cplx> v;
  for (int m = 0; m < k; ++m) {
    const double a = kTwoPi * m / k;
    v.push_back(rotation * cplx(std::cos(a), std::sin(a)));
  }
  return PeripheralSet(std::move(v));
}

PeripheralSet PeripheralSet::rotated(cplx w) const {
  std::vector<cplx> v;
  for (auto z : pts_) v.push_back(w * z);
  return PeripheralSet(std::move(v));
}

double PeripheralSet::distance_product(cplx z) const {
  double p = 1.0;
  for (auto xi : pts_) p *= std::abs(xi - z);
  return p;
}

Polynomial PeripheralSet::vanishing_polynomial() const { return Polynomial::vanishing_on(pts_); }

double PeripheralSet::gap(std::size_t j) const {
  if (pts_.size() == 1) return kTwoPi;
  const std::size_t k = (j + 1) % pts_.size();
  const double g = wrap_positive(arg(k) - arg(j));
  return g == 0.0 ? kTwoPi : g;
}

double PeripheralSet::min_separation() const {
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < pts_.size(); ++i)
    for (std::size_t j = i + 1; j < pts_.size(); ++j) m = std::min(m, std::abs(pts_[i] - pts_[j]));
  return m;
}

std::optional<std::size_t> PeripheralSet::nearest_within(cplx z, double tol) const {
  std::optional<std::size_t> best;
  double bd = tol;
  for (std::size_t i = 0; i < pts_.size(); ++i) {
    const double d = std::abs(pts_[i] - z);
    if (d <= bd) {
      bd = d;
      best = i;
    }
  }
  return best;
}

// ---------------------------------------------------------------------------
// Pieces and contours

Piece Piece::segment(cplx a, cplx b, PieceKind kind) {
  Piece p;
  p.kind = kind;
  p.a = a;
  p.b = b;
  p.grade_start = on_circle(a);
  p.grade_end = on_circle(b);
  return p;
}

Piece Piece::arc(cplx center, double radius, double theta0, double theta1) {
  Piece p;
  p.kind = PieceKind::Arc;
  p.center = center;
  p.radius = radius;
  p.theta0 = theta0;
  p.theta1 = theta1;
  p.a = center + std::polar(radius, theta0);
  p.b = center + std::polar(radius, theta1);
  return p;
}

cplx Piece::at(double t) const {
  if (!is_arc()) return a + t * (b - a);
  return center + std::polar(radius, theta0 + t * (theta1 - theta0));
}

cplx Piece::derivative(double t) const {
  if (!is_arc()) return b - a;
  const double th = theta0 + t * (theta1 - theta0);
  return cplx(0.0, radius * (theta1 - theta0)) * std::polar(1.0, th);
}

double Piece::length() const {
  return is_arc() ? radius * std::abs(theta1 - theta0) : std::abs(b - a);
}

Piece Piece::reversed() const {
  Piece p = *this;
  std::swap(p.a, p.b);
  std::swap(p.theta0, p.theta1);
  std::swap(p.grade_start, p.grade_end);
  return p;
}

double PiecewiseContour::length() const {
  double s = 0.0;
  for (const auto& p : pieces) s += p.length();
  return s;
}

bool PiecewiseContour::closed(double tol) const {
  if (pieces.empty()) return false;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const auto& next = pieces[(i + 1) % pieces.size()];
    if (std::abs(pieces[i].b - next.a) > tol) return false;
  }
  return true;
}

PiecewiseContour PiecewiseContour::reversed() const {
  PiecewiseContour c;
  c.graded = graded;
  for (auto it = pieces.rbegin(); it != pieces.rend(); ++it) c.pieces.push_back(it->reversed());
  return c;
}

std::vector<cplx> PiecewiseContour::sample(int per_piece) const {
  std::vector<cplx> out;
  for (const auto& p : pieces)
    for (int k = 0; k < per_piece; ++k) out.push_back(p.at(static_cast<double>(k) / per_piece));
  return out;
}

// ---------------------------------------------------------------------------
// Stolz domains

StolzDomain build_stolz(const PeripheralSet& e, double r) {
  if (!(r > 0.0 && r < 1.0)) throw Error(Errc::InvalidArgument, "build_stolz needs r in (0,1)", r);
  if (e.empty()) throw Error(Errc::InvalidArgument, "build_stolz needs a nonempty E");
  StolzDomain d;
  d.e = e;
  d.r = r;
  const double a = std::acos(r);
  const std::size_t n = e.size();
  for (std::size_t j = 0; j < n; ++j) {
    const double phi = e.arg(j);
    const double g = e.gap(j);
    const cplx next = e[(j + 1) % n];
    if (g <= 2.0 * a) {
      d.boundary.push_back(Piece::segment(e[j], next, PieceKind::Chord));
      continue;
    }
    const double t0 = phi + a, t1 = phi + g - a;
    Piece arc = Piece::arc(0.0, r, t0, t1);
    d.boundary.push_back(Piece::segment(e[j], arc.a));
    d.boundary.push_back(arc);
    d.boundary.push_back(Piece::segment(arc.b, next));
  }
  return d;
}

double StolzDomain::radial_extent(double psi) const {
  const cplx u = std::polar(1.0, psi);
  for (const auto& p : boundary) {
    const double aa = std::arg(p.a);
    const double span = p.is_arc() ? p.theta1 - p.theta0 : wrap_positive(std::arg(p.b) - aa);
    // A single-point E gives one gap of full turn split over three pieces; spans stay < 2 pi.
    if (wrap_positive(psi - aa) > span) continue;
    if (p.is_arc()) return p.radius;
    const cplx d = p.b - p.a;
    const double den = cross(u, d);
    if (den == 0.0) return std::abs(p.a);
    return cross(p.a, d) / den;
  }
  return r;  // not reached for a valid boundary
}

bool StolzDomain::contains(cplx z, bool closure) const {
  const double m = std::abs(z);
  if (m == 0.0) return true;
  const double rho = radial_extent(std::arg(z));
  return closure ? m <= rho + kGeomTol : m < rho - kGeomTol;
}

// ---------------------------------------------------------------------------
// Sectors and polygons

bool Sector::contains(cplx z, bool closure) const {
  const cplx lam = 1.0 - z / vertex;
  if (std::abs(lam) <= 1e-14) return closure;
  const double a = std::abs(std::arg(lam));
  return closure ? a <= half_angle + kGeomTol : a < half_angle;
}

cplx Sector::boundary_point(bool plus, double t) const {
  return vertex * (1.0 - t * std::polar(1.0, plus ? -half_angle : half_angle));
}

ConvexPolygon::ConvexPolygon(std::vector<cplx> v, bool validate) : vertices(std::move(v)) {
  if (!validate) return;
  if (vertices.size() < 3) throw Error(Errc::InvalidArgument, "polygon needs at least 3 vertices");
  for (auto z : vertices)
    if (std::abs(z) > 1.0 + kGeomTol) throw Error(Errc::InvalidArgument, "polygon vertex outside the unit disc");
  if (!is_strictly_convex()) throw Error(Errc::InvalidArgument, "polygon is not strictly convex");
}

bool ConvexPolygon::is_strictly_convex() const {
  const std::size_t n = vertices.size();
  if (n < 3) return false;
  double turning = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const cplx e1 = vertices[(i + 1) % n] - vertices[i];
    const cplx e2 = vertices[(i + 2) % n] - vertices[(i + 1) % n];
    if (!(cross(e1, e2) > 0.0)) return false;
    turning += std::arg(e2 / e1);
  }
  return std::abs(turning - kTwoPi) < 1e-9;
}

bool ConvexPolygon::contains(cplx z, bool closure) const {
  const std::size_t n = vertices.size();
  for (std::size_t i = 0; i < n; ++i) {
    const cplx a = vertices[i], b = vertices[(i + 1) % n];
    const double c = cross(b - a, z - a) / std::max(std::abs(b - a), 1e-300);
    if (closure ? c < -kGeomTol : c <= kGeomTol) return false;
  }
  return true;
}

double ConvexPolygon::boundary_distance(cplx z) const {
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < vertices.size(); ++i)
    m = std::min(m, point_segment_distance(z, vertices[i], vertices[(i + 1) % vertices.size()]));
  return m;
}

std::vector<cplx> convex_hull(std::vector<cplx> pts) {
  std::sort(pts.begin(), pts.end(), [](cplx a, cplx b) {
    return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  std::vector<cplx> h(2 * pts.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && cross(h[k - 1] - h[k - 2], pts[i] - h[k - 2]) <= 0) --k;
    h[k++] = pts[i];
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(h[k - 1] - h[k - 2], pts[i] - h[k - 2]) <= 0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  return h;
}

// ---------------------------------------------------------------------------
// Boundaries

PiecewiseContour boundary_contour(const StolzDomain& d, Orientation o) {
  PiecewiseContour c;
  c.pieces = d.boundary;
  c.graded = std::any_of(c.pieces.begin(), c.pieces.end(),
                         [](const Piece& p) { return p.grade_start || p.grade_end; });
  return o == Orientation::Counterclockwise ? c : c.reversed();
}

PiecewiseContour boundary_contour(const ConvexPolygon& d, Orientation o) {
  PiecewiseContour c;
  const std::size_t n = d.vertices.size();
  for (std::size_t i = 0; i < n; ++i) c.pieces.push_back(Piece::segment(d.vertices[i], d.vertices[(i + 1) % n]));
  c.graded = std::any_of(c.pieces.begin(), c.pieces.end(),
                         [](const Piece& p) { return p.grade_start || p.grade_end; });
  return o == Orientation::Counterclockwise ? c : c.reversed();
}

PiecewiseContour boundary_contour(UnitDisc, Orientation o) {
  PiecewiseContour c;
  for (int k = 0; k < 4; ++k) c.pieces.push_back(Piece::arc(0.0, 1.0, k * kPi / 2, (k + 1) * kPi / 2));
  return o == Orientation::Counterclockwise ? c : c.reversed();
}

int winding_number(const PiecewiseContour& c, cplx z) {
  double total = 0.0;
  for (const auto& p : c.pieces) {
    if (!p.is_arc()) {
      total += std::arg((p.b - z) / (p.a - z));
      continue;
    }
    const double dist = std::max(std::abs(std::abs(z - p.center) - p.radius), 1e-300);
    const double h = std::sqrt(8.0 * dist / p.radius);
    const double span = std::abs(p.theta1 - p.theta0);
    const int k = static_cast<int>(std::min(1e6, std::ceil(span / std::min(h, 0.1)))) + 1;
    cplx prev = p.a;
    for (int i = 1; i <= k; ++i) {
      const cplx cur = p.at(static_cast<double>(i) / k);
      total += std::arg((cur - z) / (prev - z));
      prev = cur;
    }
  }
  return static_cast<int>(std::lround(total / kTwoPi));
}

namespace {

bool segments_intersect(cplx p1, cplx p2, cplx q1, cplx q2) {
  const double d1 = cross(p2 - p1, q1 - p1), d2 = cross(p2 - p1, q2 - p1);
  const double d3 = cross(q2 - q1, p1 - q1), d4 = cross(q2 - q1, p2 - q1);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0))) return true;
  auto on_seg = [](cplx a, cplx b, cplx x) {
    return std::min(a.real(), b.real()) <= x.real() && x.real() <= std::max(a.real(), b.real()) &&
           std::min(a.imag(), b.imag()) <= x.imag() && x.imag() <= std::max(a.imag(), b.imag());
  };
  if (d1 == 0 && on_seg(p1, p2, q1)) return true;
  if (d2 == 0 && on_seg(p1, p2, q2)) return true;
  if (d3 == 0 && on_seg(q1, q2, p1)) return true;
  if (d4 == 0 && on_seg(q1, q2, p2)) return true;
  return false;
}

}  // namespace

bool is_simple(const PiecewiseContour& c, int per_piece) {
  const auto pts = c.sample(per_piece);
  const std::size_t m = pts.size();
  if (m < 3) return false;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 2; j < m; ++j) {
      if (i == 0 && j == m - 1) continue;  // adjacent through the closing point
      if (segments_intersect(pts[i], pts[(i + 1) % m], pts[j], pts[(j + 1) % m])) return false;
    }
  }
  return true;
}

double contour_distance(const PiecewiseContour& c, cplx z) {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& p : c.pieces) m = std::min(m, point_piece_distance(z, p));
  return m;
}

// ---------------------------------------------------------------------------
// Gamma_n

namespace {

GammaContour assemble_gamma(const PeripheralSet& e, double s, int n) {
  GammaContour g;
  g.n = n;
  g.alpha = std::asin(s);
  const double ca = std::cos(g.alpha);
  const double rad = ca / n;
  g.small_radius = rad;
  const double half = kPi / 2 - g.alpha;
  for (std::size_t j = 0; j < e.size(); ++j) {
    const cplx xi = e[j];
    const double phi = e.arg(j);
    const double gap = e.gap(j);
    if (!(gap > 2.0 * half)) throw Error(Errc::InvalidArgument, "s too small for the gaps of E", s);
    const cplx outer_in = xi * (1.0 - ca * std::polar(1.0, g.alpha));
    const cplx outer_out = xi * (1.0 - ca * std::polar(1.0, -g.alpha));
    Piece small = Piece::arc(xi, rad, phi + kPi + g.alpha, phi + 3 * kPi - g.alpha);
    Piece outer = Piece::arc(0.0, s, phi + half, phi + gap - half);
    auto& ps = g.contour.pieces;
    g.segments.push_back(ps.size());
    ps.push_back(Piece::segment(outer_in, small.a));
    g.small_arcs.push_back(ps.size());
    ps.push_back(small);
    g.segments.push_back(ps.size());
    ps.push_back(Piece::segment(small.b, outer_out));
    g.outer_arcs.push_back(ps.size());
    ps.push_back(outer);
  }
  // Snap the outer-arc ends onto the next segment start (they agree to rounding).
  auto& ps = g.contour.pieces;
  for (std::size_t i = 0; i < ps.size(); ++i) ps[(i + 1) % ps.size()].a = ps[i].b;
  return g;
}

bool gamma_valid(const PeripheralSet& e, const GammaContour& g) {
  if (e.size() > 1 && !(2.0 * g.small_radius < e.min_separation())) return false;
  return is_simple(g.contour, 16);
}

}  // namespace

int gamma_n_threshold(const PeripheralSet& e, double s) {
  if (!(s > 0.0 && s < 1.0)) throw Error(Errc::InvalidArgument, "gamma_n needs s in (0,1)", s);
  const double ca = std::cos(std::asin(s));
  int n = 2;
  if (e.size() > 1) n = std::max(n, static_cast<int>(std::floor(2.0 * ca / e.min_separation())) + 1);
  for (; n < 10'000'000; n = n < 64 ? n + 1 : n + n / 16) {
    if (gamma_valid(e, assemble_gamma(e, s, n))) return n;
  }
  throw Error(Errc::NoConvergence, "no admissible n for gamma_n");
}

GammaContour gamma_n(const PeripheralSet& e, double s, int n) {
  const int n0 = gamma_n_threshold(e, s);
  if (n < n0) throw Error(Errc::NTooSmall, "n below the gamma_n threshold", n0);
  GammaContour g = assemble_gamma(e, s, n);
  g.n0 = n0;
  return g;
}

// ---------------------------------------------------------------------------
// Polygon helpers

HalflineMeet halfline_intersection(cplx zeta1, double mu1, cplx zeta2, double mu2) {
  const cplx a = zeta1 * std::polar(1.0, -mu1);
  const cplx b = zeta2 * std::polar(1.0, mu2);
  const double det = -a.real() * b.imag() + b.real() * a.imag();
  if (std::abs(det) < 1e-12 * std::abs(a) * std::abs(b))
    throw Error(Errc::Parallel, "half-lines are parallel", det);
  const cplx rhs = zeta1 - zeta2;
  if (std::abs(rhs) <= 1e-14 * (std::abs(zeta1) + std::abs(zeta2))) return {zeta1, 0.0, 0.0};
  // [a.re -b.re; a.im -b.im] [t; t'] = rhs
  const double t = (rhs.real() * (-b.imag()) + b.real() * rhs.imag()) / det;
  const double tp = (a.real() * rhs.imag() - a.imag() * rhs.real()) / det;
  if (!(t > 0.0) || !(tp > 0.0)) throw Error(Errc::NoPositiveSolution, "half-lines meet behind a vertex");
  return {zeta1 - t * a, t, tp};
}

cplx lift_vertex(cplx c) {
  const double m = std::abs(c);
  if (m == 0.0) throw Error(Errc::ZeroInput, "lift_vertex of 0");
  return 0.5 * (c + c / m);
}

double stolz_type(std::span<const cplx> eigs, const PeripheralSet& e, double peripheral_tol) {
  std::vector<cplx> inner;
  for (auto z : eigs)
    if (!e.nearest_within(z, peripheral_tol)) inner.push_back(z);
  auto fits = [&](double r) {
    const StolzDomain d = build_stolz(e, r);
    return std::all_of(inner.begin(), inner.end(), [&](cplx z) { return d.contains(z, true); });
  };
  constexpr double floor = 1e-6;
  if (fits(floor)) return floor;
  double lo = floor, hi = 1.0 - 1e-12;
  if (!fits(hi)) throw Error(Errc::NotRittE, "spectrum not inside any E_r with r < 1");
  while (hi - lo > 1e-9) {
    const double mid = 0.5 * (lo + hi);
    (fits(mid) ? hi : lo) = mid;
  }
  return hi;
}

}  // namespace rittlab
