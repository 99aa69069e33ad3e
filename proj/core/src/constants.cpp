#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "rittlab/calculus.hpp"
#include "rittlab/error.hpp"
#include "rittlab/linalg.hpp"
#include "maximize.hpp"

namespace rittlab {

using detail::sampled_max;

namespace {

PiecewiseContour region_contour(const Region& region) {
  return std::visit([](const auto& r) { return boundary_contour(r); }, region);
}

}  // namespace

double boundary_sup(const Analytic& phi, const Region& region, int samples) {
  const auto c = region_contour(region);
  const double len = c.length();
  double best = 0.0;
  for (const auto& p : c.pieces) {
    const int n = std::max(16, static_cast<int>(std::ceil(samples * p.length() / len)));
    std::vector<double> ts(n + 1);
    for (int i = 0; i <= n; ++i) ts[i] = static_cast<double>(i) / n;
    best = std::max(best, sampled_max([&](double t) { return std::abs(phi(p.at(t))); }, ts));
  }
  return best;
}

double ConstantEstimate::growth(int d0, int d1) const {
  auto at = [&](int d) {
    double k = 0.0;
    for (std::size_t i = 0; i < degrees.size(); ++i)
      if (degrees[i] <= d) k = k_by_degree[i];
    return k;
  };
  const double k0 = at(d0);
  return k0 > 0.0 ? at(d1) / k0 - 1.0 : std::numeric_limits<double>::infinity();
}

namespace {

struct Member {
  Polynomial poly;
  std::string label;
};

std::vector<cplx> region_points_on_circle(const Region& region) {
  std::vector<cplx> pts;
  if (const auto* s = std::get_if<StolzDomain>(&region)) {
    pts.assign(s->e.points().begin(), s->e.points().end());
  } else if (const auto* d = std::get_if<ConvexPolygon>(&region)) {
    for (auto v : d->vertices)
      if (std::abs(std::abs(v) - 1.0) < 1e-12) pts.push_back(v);
  }
  return pts;
}

std::vector<Member> build_ensemble(const Region& region, const ProbeConfig& cfg) {
  std::vector<Member> m;
  const int dmax = cfg.max_degree;
  for (int k = 0; k <= dmax; ++k) m.push_back({Polynomial::monomial(k), "z^" + std::to_string(k)});

  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> g(0.0, 1.0);
  for (int d = 5; d <= dmax; d += 5)
    for (int i = 0; i < cfg.random_per_degree; ++i) {
      std::vector<cplx> c(d + 1);
      for (auto& x : c) x = {g(rng), g(rng)};
      m.push_back({Polynomial(std::move(c)), "random(" + std::to_string(d) + "," + std::to_string(i) + ")"});
    }

  // Peak polynomials ((1 + conj(w) z)/2)^k are maximal at w on the circle.
  auto dirs = region_points_on_circle(region);
  for (int i = 0; i < cfg.peak_directions; ++i) dirs.push_back(std::polar(1.0, 2.0 * kPi * (i + 0.5) / cfg.peak_directions));
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    const Polynomial base({0.5, 0.5 * std::conj(dirs[i])});
    Polynomial pw = Polynomial::constant(1.0);
    for (int k = 1; k <= dmax; ++k) {
      pw = pw * base;
      if (k % 5 == 0) m.push_back({pw, "peak(" + std::to_string(i) + "," + std::to_string(k) + ")"});
    }
  }

  // Probes vanishing on the unimodular part of the region.
  const auto e = region_points_on_circle(region);
  if (!e.empty()) {
    const Polynomial v = Polynomial::vanishing_on(e);
    for (int k = 0; k + v.degree() <= dmax; ++k)
      m.push_back({Polynomial::monomial(k) * v, "vanishing*z^" + std::to_string(k)});
  }
  return m;
}

}  // namespace

ConstantEstimate calculus_constant(const Matrix& t, const Region& region, double p, const ProbeConfig& cfg) {
  const auto members = build_ensemble(region, cfg);
  const std::size_t d = t.dim();
  std::vector<Matrix> pw{Matrix::identity(d)};
  for (int k = 1; k <= cfg.max_degree; ++k) pw.push_back(pw.back() * t);

  const bool hilbert = std::abs(p - 2.0) < 1e-15;
  ConstantEstimate out;
  for (int deg = 5; deg <= cfg.max_degree; deg += 5) out.degrees.push_back(deg);
  if (out.degrees.empty() || out.degrees.back() != cfg.max_degree) out.degrees.push_back(cfg.max_degree);
  out.k_by_degree.assign(out.degrees.size(), 0.0);

  for (const auto& mem : members) {
    const double sup = boundary_sup(mem.poly, region, cfg.boundary_samples);
    if (!(sup > 1e-300)) continue;
    Matrix v(d);
    const auto& c = mem.poly.coeffs();
    for (std::size_t k = 0; k < c.size(); ++k) v += pw[k] * c[k];
    const double nv = hilbert ? norm2(v) : op_norm(v, p, {.restarts = 2, .seed = cfg.seed}).value;
    const double ratio = nv / sup;
    for (std::size_t i = 0; i < out.degrees.size(); ++i)
      if (mem.poly.degree() <= out.degrees[i]) out.k_by_degree[i] = std::max(out.k_by_degree[i], ratio);
    if (ratio > out.k_lower) {
      out.k_lower = ratio;
      out.argmax = mem.label;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Rational functions on sectors

cplx Rational::operator()(cplx z) const {
  cplx acc = c;
  for (std::size_t k = 0; k < poles.size(); ++k) acc += residues[k] / (z - poles[k]);
  return acc;
}

Rational Rational::compose_affine(cplx a, cplx b) const {
  Rational out{c, {}, {}};
  for (std::size_t k = 0; k < poles.size(); ++k) {
    out.residues.push_back(residues[k] / b);
    out.poles.push_back((poles[k] - a) / b);
  }
  return out;
}

Matrix Rational::at(const Matrix& a) const {
  Matrix out = Matrix::identity(a.dim()) * c;
  for (std::size_t k = 0; k < poles.size(); ++k) out -= resolvent_matrix(a, poles[k]) * residues[k];
  return out;
}

double sector_sup(const Rational& g, double theta) {
  constexpr int n = 2000;
  std::vector<double> ts(n + 1);
  for (int i = 0; i <= n; ++i) ts[i] = -6.0 + 9.0 * i / n;  // log10 |lambda|
  double best = std::max(std::abs(g(0.0)), std::abs(g.c));
  for (double sgn : {1.0, -1.0}) {
    const cplx dir = std::polar(1.0, sgn * theta);
    best = std::max(best, sampled_max([&](double lt) { return std::abs(g(dir * std::pow(10.0, lt))); }, ts));
  }
  return best;
}

std::vector<Rational> random_rationals(double theta, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Rational> out;
  for (int i = 0; i < count; ++i) {
    Rational r{{0.5 * g(rng), 0.5 * g(rng)}, {}, {}};
    const int np = 1 + static_cast<int>(u(rng) * 3.0);
    for (int k = 0; k < np; ++k) {
      const double lo = theta + 0.05 * (kPi - theta);
      const double psi = (lo + (kPi - lo) * u(rng)) * (u(rng) < 0.5 ? -1.0 : 1.0);
      const double rad = std::pow(10.0, -1.0 + 2.0 * u(rng));
      r.poles.push_back(std::polar(rad, psi));
      r.residues.push_back(cplx(g(rng), g(rng)) * rad);
    }
    out.push_back(std::move(r));
  }
  return out;
}

RhoShiftReport rho_shift_check(const Matrix& a, double theta, std::span<const Rational> g,
                               std::span<const double> rho_grid) {
  for (const auto& r : g)
    for (auto pole : r.poles)
      if (std::abs(pole) < 1e-14 || std::abs(std::arg(pole)) <= theta)
        throw Error(Errc::PoleInSector, "pole inside the closed sector", std::arg(pole));

  RhoShiftReport rep;
  for (const auto& r : g) rep.k_reference = std::max(rep.k_reference, norm2(r.at(a)) / sector_sup(r, theta));
  for (double rho : rho_grid) {
    Matrix b = a * rho;
    b.add_identity(1.0 - rho);
    double worst = 0.0;
    for (const auto& r : g) {
      const Matrix direct = r.at(b);
      const Rational h = r.compose_affine(1.0 - rho, rho);
      const Matrix composed = h.at(a);
      const double nd = norm2(direct);
      rep.composition_residual = std::max(rep.composition_residual, norm2(direct - composed) / std::max(1.0, nd));
      worst = std::max(worst, nd / sector_sup(r, theta));
      rep.k_reference = std::max(rep.k_reference, norm2(composed) / sector_sup(h, theta));
    }
    rep.ratio_by_rho.push_back(worst);
    rep.max_ratio = std::max(rep.max_ratio, worst);
  }
  rep.bounded = rep.max_ratio <= rep.k_reference * (1.0 + 1e-2);
  return rep;
}

}  // namespace rittlab
