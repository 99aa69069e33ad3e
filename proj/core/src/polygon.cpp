#include "rittlab/polygon.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "rittlab/error.hpp"

namespace rittlab {

std::vector<double> polygon_theta_grid() {
  std::vector<double> g;
  for (int k = 2; k <= 10; ++k) g.push_back(kPi / 2 - std::ldexp(1.0, -k));
  return g;
}

std::vector<Sector> PolygonResult::sectors() const {
  std::vector<Sector> s;
  for (std::size_t i = 0; i < anchors.size(); ++i) s.push_back({anchors[i], angles[i]});
  return s;
}

namespace {

std::optional<cplx> meet_in_disc(cplx z1, double mu1, cplx z2, double mu2) {
  try {
    const auto m = halfline_intersection(z1, mu1, z2, mu2);
    const double a = std::abs(m.point);
    if (a > 1e-12 && a < 1.0 - 1e-12 && m.t_plus > 0.0) return m.point;
  } catch (const Error&) {
  }
  return std::nullopt;
}

struct Split {
  std::vector<cplx> inner;       // spectrum away from E
  std::vector<cplx> all;         // whole spectrum
  double rho_inner = 0.0;
};

bool theta_admissible(const PeripheralSet& e, const Split& sp, double theta) {
  const std::size_t n = e.size();
  for (std::size_t j = 0; j < n; ++j) {
    const Sector s{e[j], theta};
    for (std::size_t k = 0; k < n; ++k)
      if (k != j && !s.contains(e[k])) return false;
    for (auto z : sp.inner)
      if (!s.contains(z)) return false;
    if (n > 1) {
      // Outer half-lines of consecutive points must not meet in the closed disc.
      try {
        const auto m = halfline_intersection(e[j], theta, e[(j + 1) % n], theta);
        if (std::abs(m.point) <= 1.0 + 1e-12) return false;
      } catch (const Error&) {
      }
    }
  }
  return true;
}

struct GapFill {
  std::vector<cplx> points;
  std::vector<cplx> meets;  // size points.size() + 1
};

std::optional<GapFill> fill_gap(const PeripheralSet& e, std::size_t j, const Split& sp, double theta,
                                double theta_p, double r, int cap) {
  const std::size_t n = e.size();
  const cplx xi = e[j], xn = e[(j + 1) % n];
  const double ex = kPi - 2.0 * theta;
  const double a0 = e.arg(j) + ex, a1 = e.arg(j) + e.gap(j) - ex;
  for (int p = 1; p <= cap; p *= 2) {
    GapFill f;
    for (int i = 0; i < p; ++i) {
      const double pos = p == 1 ? 0.5 * (a0 + a1) : a0 + i * (a1 - a0) / (p - 1);
      f.points.push_back(std::polar(r, pos));
    }
    bool ok = true;
    for (auto z : f.points) {
      const Sector s{z, theta_p};
      for (auto lam : sp.all)
        if (!s.contains(lam)) {
          ok = false;
          break;
        }
      if (!ok) break;
    }
    if (!ok) continue;
    auto first = meet_in_disc(xi, theta, f.points.front(), theta_p);
    if (!first) continue;
    f.meets.push_back(*first);
    for (int i = 0; i + 1 < p && ok; ++i) {
      auto m = meet_in_disc(f.points[i], theta_p, f.points[i + 1], theta_p);
      if (!m) ok = false;
      else f.meets.push_back(*m);
    }
    if (!ok) continue;
    auto last = meet_in_disc(f.points.back(), theta_p, xn, theta);
    if (!last) continue;
    f.meets.push_back(*last);
    return f;
  }
  return std::nullopt;
}

}  // namespace

PolygonResult build_polygon(std::span<const cplx> spectrum, const PeripheralSet& e, const PolygonConfig& cfg) {
  Split sp;
  for (auto z : spectrum) {
    sp.all.push_back(z);
    if (e.nearest_within(z, cfg.peripheral_tol)) continue;
    if (std::abs(z) >= 1.0 - cfg.peripheral_tol)
      throw Error(Errc::NotRittE, "eigenvalue on or outside the unit circle away from E", std::abs(z));
    sp.inner.push_back(z);
    sp.rho_inner = std::max(sp.rho_inner, std::abs(z));
  }

  const auto grid = polygon_theta_grid();
  std::vector<double> thetas;
  if (cfg.theta) {
    if (!(*cfg.theta > 0.0 && *cfg.theta < kPi / 2)) throw Error(Errc::InvalidArgument, "theta must lie in (0, pi/2)");
    thetas.push_back(*cfg.theta);
    for (double t : grid)
      if (t > *cfg.theta) thetas.push_back(t);
  } else {
    thetas = grid;
  }
  std::vector<double> theta_ps = grid;
  if (cfg.theta_prime) {
    if (!(*cfg.theta_prime > 0.0 && *cfg.theta_prime < kPi / 2))
      throw Error(Errc::InvalidArgument, "theta' must lie in (0, pi/2)");
    theta_ps = {*cfg.theta_prime};
  }

  bool any_admissible = false;
  for (double theta : thetas) {
    if (!theta_admissible(e, sp, theta)) continue;
    any_admissible = true;
    const double r = std::max(0.5 * (1.0 + sp.rho_inner), 0.5 * (1.0 + std::cos(kPi - 2.0 * theta)));
    for (double theta_p : theta_ps) {
      PolygonResult res;
      res.theta = theta;
      res.theta_prime = theta_p;
      res.r = r;
      bool ok = true;
      for (std::size_t j = 0; j < e.size() && ok; ++j) {
        auto f = fill_gap(e, j, sp, theta, theta_p, r, cfg.max_points_per_gap);
        if (!f) {
          ok = false;
          break;
        }
        res.anchors.push_back(e[j]);
        res.angles.push_back(theta);
        res.peripheral_anchor.push_back(true);
        res.meets.push_back(f->meets.front());
        for (std::size_t i = 0; i < f->points.size(); ++i) {
          res.anchors.push_back(f->points[i]);
          res.angles.push_back(theta_p);
          res.peripheral_anchor.push_back(false);
          res.meets.push_back(f->meets[i + 1]);
        }
        res.points_per_gap.push_back(static_cast<int>(f->points.size()));
      }
      if (!ok) continue;

      std::vector<cplx> v0, v;
      for (std::size_t i = 0; i < res.anchors.size(); ++i) {
        res.lifts.push_back(lift_vertex(res.meets[i]));
        v0.push_back(res.anchors[i]);
        v0.push_back(res.meets[i]);
        v.push_back(res.anchors[i]);
        v.push_back(res.lifts[i]);
      }
      res.delta0 = ConvexPolygon(v0, false);
      if (!res.delta0.is_strictly_convex()) continue;
      res.delta = ConvexPolygon(v, false);
      if (!res.delta.is_strictly_convex()) {
        res.delta = ConvexPolygon(convex_hull(v), false);
        res.convexified = true;
      }
      for (std::size_t k = 0; k < res.delta.vertices.size(); ++k)
        if (std::find(res.lifts.begin(), res.lifts.end(), res.delta.vertices[k]) != res.lifts.end())
          res.split_vertices.push_back(k);

      double md = std::numeric_limits<double>::infinity();
      for (std::size_t a = 0; a < v0.size(); ++a)
        for (std::size_t b = a + 1; b < v0.size(); ++b) md = std::min(md, std::abs(v0[a] - v0[b]));
      res.epsilon = md / 3.0;

      const auto secs = res.sectors();
      std::mt19937_64 rng(cfg.seed);
      std::uniform_real_distribution<double> u(0.0, 1.0);
      for (int k = 0; k < cfg.membership_samples; ++k) {
        const cplx z = std::polar(std::sqrt(u(rng)), 2.0 * kPi * u(rng));
        const bool in_poly = res.delta0.contains(z);
        const bool in_all = std::all_of(secs.begin(), secs.end(), [&](const Sector& s) { return s.contains(z); });
        if (in_poly != in_all) ++res.membership_disagreements;
      }

      res.spectrum_enclosed = std::all_of(sp.all.begin(), sp.all.end(), [&](cplx z) {
        return res.delta.contains(z, true) || e.nearest_within(z, cfg.peripheral_tol).has_value();
      });
      std::size_t on_circle = 0;
      bool only_e = true;
      for (auto z : res.delta.vertices) {
        if (std::abs(z) < 1.0 - 1e-12) continue;
        ++on_circle;
        if (!e.nearest_within(z, 1e-12)) only_e = false;
      }
      res.circle_meets_only_e = only_e && on_circle == e.size();
      res.enclosed_s = 0.999 * res.delta.boundary_distance(0.0);
      return res;
    }
  }
  if (!any_admissible) throw Error(Errc::NoAdmissibleTheta, "no admissible theta up to pi/2 - 1e-3");
  throw Error(Errc::CoverageFailure, "intermediate points exceed the per-gap cap");
}

}  // namespace rittlab
