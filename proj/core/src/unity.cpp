#include "rittlab/unity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <random>

#include "rittlab/error.hpp"
#include "rittlab/linalg.hpp"
#include "rittlab/quadrature.hpp"
#include "rittlab/rbound.hpp"

namespace rittlab {

cplx family_sigma(cplx lambda) {
  if (lambda == cplx{}) return {};
  return std::exp(std::log(lambda) / 3.0 - 2.0 * std::log(1.0 + lambda) / 3.0);
}

namespace {

cplx family_rho(cplx mu) { return mu / ((1.0 + mu) * (1.0 + mu)); }

struct DefaultFamily {
  int m = 0;
  cplx h(cplx lambda) const {
    // Theta_i is usually evaluated for every i at one lambda.
    thread_local int last_m = -1;
    thread_local cplx last_l, last_h;
    if (last_m == m && last_l == lambda) return last_h;
    cplx acc{};
    for (int n = -m; n <= m; ++n) acc += family_rho(std::ldexp(1.0, -n) * lambda);
    last_m = m;
    last_l = lambda;
    last_h = acc;
    return acc;
  }
  cplx sigma_n(int i, cplx lambda) const { return family_sigma(std::ldexp(1.0, m - i) * lambda); }
};

}  // namespace

SectorFamily default_family(int m, const FamilyConfig& cfg) {
  if (m < 0) throw Error(Errc::InvalidArgument, "truncation must be nonnegative", m);
  const DefaultFamily fam{m};
  SectorFamily out;
  out.size = 2 * m + 1;
  out.truncation = m;
  out.decay_s = 1.0 / 3.0;
  out.window_min = std::ldexp(1.0, -m);
  out.window_max = std::ldexp(1.0, m);
  out.theta = [fam](int i, cplx l) { return fam.sigma_n(i, l) / fam.h(l); };
  out.phi = [fam](int i, cplx l) { return fam.sigma_n(i, l); };
  out.psi = out.phi;

  // Floor of |h| and the decay constant on a polar grid of the window.
  const double amax = kPi / 2.0 - cfg.angle_margin;
  const int na = std::max(cfg.angular_samples, 2), nr = std::max(cfg.radial_samples, 2);
  double floor_value = std::numeric_limits<double>::infinity(), c = 0.0;
  for (int a = 0; a < na; ++a) {
    const double ang = -amax + 2.0 * amax * a / (na - 1);
    for (int k = 0; k < nr; ++k) {
      const double rad = std::ldexp(1.0, -m) * std::pow(4.0, static_cast<double>(m) * k / (nr - 1));
      const cplx l = std::polar(rad, ang);
      const cplx hv = fam.h(l);
      floor_value = std::min(floor_value, std::abs(hv));
      if (rad <= 2.0)
        for (int i = 0; i < out.size; ++i)
          c = std::max(c, std::abs(fam.sigma_n(i, l) / hv) / std::pow(rad, out.decay_s));
    }
  }
  out.floor_value = floor_value;
  if (!(floor_value >= cfg.floor)) throw Error(Errc::FloorFailure, "inf |h| on the window is below the floor", floor_value);
  // Margin for values between grid points.
  out.decay_c = 1.05 * c;
  return out;
}

MultiIndexTerm compose_multipoint(const SectorFamily& family, const PeripheralSet& e, std::span<const int> iota) {
  if (iota.size() != e.size()) throw Error(Errc::InvalidArgument, "multi-index length differs from |E|");
  for (int i : iota)
    if (i < 0 || i >= family.size) throw Error(Errc::InvalidArgument, "index outside the family", i);
  MultiIndexTerm t;
  t.iota.assign(iota.begin(), iota.end());
  std::vector<cplx> xi(e.points().begin(), e.points().end());
  auto make = [&](std::function<cplx(int, cplx)> f) {
    return [f = std::move(f), xi, iota = t.iota](cplx z) {
      cplx acc = 1.0;
      for (std::size_t j = 0; j < xi.size(); ++j) acc *= f(iota[j], 1.0 - std::conj(xi[j]) * z);
      return acc;
    };
  };
  t.theta = make(family.theta);
  t.phi = make(family.phi);
  t.psi = make(family.psi);
  return t;
}

std::vector<std::vector<int>> multi_indices(const SectorFamily& family, std::size_t n) {
  std::vector<std::vector<int>> out;
  if (n == 0 || family.size <= 0) return out;
  std::vector<int> cur(n, 0);
  for (;;) {
    out.push_back(cur);
    std::size_t k = n;
    while (k > 0 && ++cur[k - 1] == family.size) cur[--k] = 0;
    if (k == 0) break;
  }
  const int m = family.truncation;
  auto shell = [m](const std::vector<int>& v) {
    int s = 0;
    for (int i : v) s = std::max(s, std::abs(i - m));
    return s;
  };
  std::stable_sort(out.begin(), out.end(), [&](const auto& a, const auto& b) { return shell(a) < shell(b); });
  return out;
}

namespace {

// Gauss nodes (position, |dz| weight) on a piece, graded dyadically toward the
// ends flagged in `grade_a` / `grade_b`.
struct AbsNode {
  cplx z;
  double w;
};

void append_panel(const Piece& p, double t0, double t1, std::vector<AbsNode>& out) {
  const auto& g = gauss_legendre(16);
  for (std::size_t k = 0; k < g.x.size(); ++k) {
    const double t = t0 + (t1 - t0) * g.x[k];
    out.push_back({p.at(t), g.w[k] * (t1 - t0) * std::abs(p.derivative(t))});
  }
}

std::vector<AbsNode> graded_nodes(const Piece& p, bool grade_a, bool grade_b, double delta) {
  std::vector<AbsNode> out;
  const double len = p.length();
  std::vector<double> cuts{0.0, 1.0};
  const double eps = std::clamp(delta / len, 1e-300, 0.25);
  for (double f = 0.25; f > eps; f *= 0.5) {
    if (grade_a) cuts.push_back(f);
    if (grade_b) cuts.push_back(1.0 - f);
  }
  for (int k = 1; k < 32; ++k) cuts.push_back(k / 32.0);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end(), [](double a, double b) { return b - a < 1e-15; }), cuts.end());
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
    for (int s = 0; s < 2; ++s) {
      const double a = cuts[i] + (cuts[i + 1] - cuts[i]) * s / 2.0;
      append_panel(p, a, a + (cuts[i + 1] - cuts[i]) / 2.0, out);
    }
  return out;
}

struct TrimmedPiece {
  Piece piece;
  bool at_a = false, at_b = false;  // this end was trimmed at a point of E
  std::size_t vertex_a = 0, vertex_b = 0;
};

std::vector<TrimmedPiece> trimmed_boundary(const PeripheralSet& e, double r, double delta) {
  const auto c = boundary_contour(build_stolz(e, r));
  std::vector<TrimmedPiece> out;
  for (const auto& p : c.pieces) {
    if (p.is_arc()) {
      out.push_back({p});
      continue;
    }
    const auto va = e.nearest_within(p.a, 1e-12), vb = e.nearest_within(p.b, 1e-12);
    const double len = p.length();
    const double t0 = va ? delta / len : 0.0, t1 = vb ? 1.0 - delta / len : 1.0;
    if (!(t1 > t0)) continue;
    TrimmedPiece tp{Piece::segment(p.at(t0), p.at(t1), p.kind), va.has_value(), vb.has_value()};
    tp.vertex_a = va.value_or(0);
    tp.vertex_b = vb.value_or(0);
    out.push_back(tp);
  }
  return out;
}

}  // namespace

UnityReport verify_unity(const SectorFamily& family, const PeripheralSet& e, double r, std::span<const cplx> z_grid,
                         int truncation) {
  if (family.size <= 0 || !family.theta || !family.phi || !family.psi || family.floor_value <= 0.0)
    throw Error(Errc::FamilyInvalid, "family carries no validity certificate");
  if (e.empty()) throw Error(Errc::InvalidArgument, "empty peripheral set");
  if (truncation < 0 || truncation > family.truncation)
    throw Error(Errc::InvalidArgument, "truncation outside the family", truncation);
  if (!(r > 0.0 && r < 1.0)) throw Error(Errc::InvalidArgument, "r must lie in (0,1)", r);

  const std::size_t n = e.size();
  const int m = family.truncation;
  std::vector<int> idx;
  for (int i = m - truncation; i <= m + truncation; ++i) idx.push_back(i);
  const std::size_t q = idx.size();

  UnityReport rep;
  rep.excised_radius = family.window_min;

  // Per-point tables of Theta_i, Phi_i, Psi_i at lambda_j = 1 - conj(xi_j) z.
  std::vector<cplx> th(n * q), ph(n * q), ps(n * q);
  auto fill = [&](cplx z) {
    for (std::size_t j = 0; j < n; ++j) {
      const cplx l = 1.0 - std::conj(e[j]) * z;
      for (std::size_t a = 0; a < q; ++a) {
        th[j * q + a] = family.theta(idx[a], l);
        ph[j * q + a] = family.phi(idx[a], l);
        ps[j * q + a] = family.psi(idx[a], l);
      }
    }
  };

  std::vector<std::size_t> odo(n);
  auto for_each_iota = [&](auto&& body) {
    std::fill(odo.begin(), odo.end(), 0);
    for (;;) {
      body();
      std::size_t k = n;
      while (k > 0 && ++odo[k - 1] == q) odo[--k] = 0;
      if (k == 0) return;
    }
  };

  for (auto z : z_grid) {
    if (!(std::abs(z) < 1.0)) throw Error(Errc::InvalidArgument, "grid point outside the open disc", std::abs(z));
    fill(z);
    double sphi = 1.0, spsi = 1.0, stheta = 1.0;
    for (std::size_t j = 0; j < n; ++j) {
      double a = 0.0, b = 0.0, c = 0.0;
      for (std::size_t k = 0; k < q; ++k) {
        a += std::abs(ph[j * q + k]);
        b += std::abs(ps[j * q + k]);
        c = std::max(c, std::abs(th[j * q + k]));
      }
      sphi *= a;
      spsi *= b;
      stheta *= c;
    }
    rep.sup_sum_phi = std::max(rep.sup_sum_phi, sphi);
    rep.sup_sum_psi = std::max(rep.sup_sum_psi, spsi);
    rep.sup_theta = std::max(rep.sup_theta, stheta);

    cplx total{};
    for_each_iota([&] {
      cplx term = 1.0;
      for (std::size_t j = 0; j < n; ++j) term *= th[j * q + odo[j]] * ph[j * q + odo[j]] * ps[j * q + odo[j]];
      total += term;
    });
    rep.unity_defect = std::max(rep.unity_defect, std::abs(1.0 - total));
  }

  // Boundary integrals over the trimmed boundary of E_r, one shared node set.
  const double delta = family.window_min;
  const auto pieces = trimmed_boundary(e, r, delta);
  std::size_t terms = 1;
  for (std::size_t j = 0; j < n; ++j) terms *= q;
  rep.terms = terms;
  rep.boundary_integrals.assign(terms, 0.0);
  std::vector<double> abs_th(n * q);
  for (const auto& tp : pieces) {
    for (const auto& node : graded_nodes(tp.piece, tp.at_a, tp.at_b, delta)) {
      fill(node.z);
      for (std::size_t k = 0; k < n * q; ++k) abs_th[k] = std::abs(th[k]);
      const double w = node.w / e.distance_product(node.z);
      std::size_t flat = 0;
      for_each_iota([&] {
        double v = w;
        for (std::size_t j = 0; j < n; ++j) v *= abs_th[j * q + odo[j]];
        rep.boundary_integrals[flat++] += v;
      });
    }
  }
  {
    std::vector<double> sorted = rep.boundary_integrals;
    std::sort(sorted.begin(), sorted.end());
    const double med = sorted.size() % 2 ? sorted[sorted.size() / 2]
                                         : 0.5 * (sorted[sorted.size() / 2 - 1] + sorted[sorted.size() / 2]);
    rep.integral_max_over_median = med > 0.0 ? sorted.back() / med : std::numeric_limits<double>::infinity();
  }

  // Vertex pieces against the same integral in lambda = 1 - conj(xi) z, on a
  // spread of multi-indices.
  const std::size_t checks = std::min<std::size_t>(terms, 12);
  for (std::size_t c = 0; c < checks; ++c) {
    std::size_t flat = c * (terms - 1) / std::max<std::size_t>(checks - 1, 1);
    std::vector<int> iota(n);
    for (std::size_t j = n; j-- > 0;) {
      iota[j] = idx[flat % q];
      flat /= q;
    }
    const auto term = compose_multipoint(family, e, iota);
    auto g = [&](cplx z) { return std::abs(term.theta(z)) / e.distance_product(z); };
    for (const auto& tp : pieces) {
      if (!tp.at_a && !tp.at_b) continue;
      const std::size_t v = tp.at_a ? tp.vertex_a : tp.vertex_b;
      const cplx xi = e[v];
      double direct = 0.0;
      for (const auto& node : graded_nodes(tp.piece, tp.at_a, tp.at_b, delta)) direct += node.w * g(node.z);
      const Piece lp = Piece::segment(1.0 - std::conj(xi) * tp.piece.a, 1.0 - std::conj(xi) * tp.piece.b);
      const double pulled = integrate_piece_abs(lp, [&](cplx l) { return g(xi * (1.0 - l)); }, 1e-9 * direct, 30);
      rep.pullback_residual = std::max(rep.pullback_residual, std::abs(direct - pulled) / std::max(1e-300, direct));
    }
  }
  return rep;
}

PairingReport pairing_estimate(const Polynomial& h, const Matrix& t, const SectorFamily& family,
                               const PeripheralSet& e, std::span<const std::size_t> n_terms,
                               const PairingConfig& cfg) {
  if (family.size <= 0 || !family.theta) throw Error(Errc::FamilyInvalid, "family carries no validity certificate");
  if (n_terms.empty()) throw Error(Errc::InvalidArgument, "no truncation sizes");
  const auto iotas = multi_indices(family, e.size());
  for (std::size_t i = 0; i < n_terms.size(); ++i)
    if (n_terms[i] == 0 || n_terms[i] > iotas.size() || (i > 0 && n_terms[i] < n_terms[i - 1]))
      throw Error(Errc::InvalidArgument, "truncation sizes must be increasing and within the family",
                  static_cast<double>(n_terms[i]));
  const std::size_t nmax = n_terms.back();

  std::vector<Analytic> fns;
  fns.reserve(4 * nmax);
  for (std::size_t k = 0; k < nmax; ++k) {
    auto term = std::make_shared<MultiIndexTerm>(compose_multipoint(family, e, iotas[k]));
    fns.emplace_back(std::function<cplx(cplx)>([term, h](cplx z) { return h(z) * term->theta(z) * term->phi(z) * term->psi(z); }));
    fns.emplace_back(std::function<cplx(cplx)>([term, h](cplx z) { return h(z) * term->theta(z); }));
    fns.emplace_back(std::function<cplx(cplx)>([term](cplx z) { return term->phi(z); }));
    fns.emplace_back(std::function<cplx(cplx)>([term](cplx z) { return term->psi(z); }));
  }
  const auto res = fc_contour_many(fns, t, e, cfg.s, cfg.quad);

  const std::size_t d = t.dim();
  const Matrix ht = mat_poly(h, t);
  PairingReport rep;
  rep.n_terms.assign(n_terms.begin(), n_terms.end());
  Matrix acc(d);
  std::size_t next = 0;
  for (std::size_t k = 0; k < nmax; ++k) {
    acc += res[4 * k].value;
    if (k + 1 == n_terms[next]) {
      while (next < n_terms.size() && n_terms[next] == k + 1) {
        rep.truncation_error.push_back(norm2(acc - ht));
        ++next;
      }
    }
  }

  std::vector<Matrix> htheta, phis, psis;
  for (std::size_t k = 0; k < nmax; ++k) {
    htheta.push_back(res[4 * k + 1].value);
    phis.push_back(res[4 * k + 2].value);
    psis.push_back(res[4 * k + 3].value);
  }
  rep.r_bound = rbound_lower(htheta, cfg.p, {.seed = cfg.seed}).value;
  rep.h_sup = boundary_sup(h, build_stolz(e, cfg.s));

  const double pd = cfg.p / (cfg.p - 1.0);
  const RadMode mode = nmax <= 16 ? RadMode::Exact : RadMode::MonteCarlo;
  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> g(0.0, 1.0);
  rep.chain_holds = true;
  for (int s = 0; s < cfg.vector_samples; ++s) {
    Vector x(d), y(d);
    for (auto& v : x) v = {g(rng), g(rng)};
    for (auto& v : y) v = {g(rng), g(rng)};
    const double nx = vector_norm(x, cfg.p), ny = vector_norm(y, pd);
    for (auto& v : x) v /= nx;
    for (auto& v : y) v /= ny;

    const Vector hx = acc.apply(x);
    cplx pair{};
    for (std::size_t k = 0; k < d; ++k) pair += hx[k] * std::conj(y[k]);

    RadSample left{{}, cfg.p, mode, 4096, cfg.seed}, phix{{}, cfg.p, mode, 4096, cfg.seed},
        right{{}, pd, mode, 4096, cfg.seed};
    for (std::size_t k = 0; k < nmax; ++k) {
      phix.vectors.push_back(phis[k].apply(x));
      left.vectors.push_back(htheta[k].apply(phix.vectors.back()));
      right.vectors.push_back(psis[k].apply_adjoint(y));
    }
    const double b = rademacher_norm(right).value;
    const double cs = rademacher_norm(left).value * b;
    const double bound = rep.r_bound * rademacher_norm(phix).value * b;
    rep.max_pairing = std::max(rep.max_pairing, std::abs(pair));
    rep.max_cs_bound = std::max(rep.max_cs_bound, cs);
    rep.max_bound = std::max(rep.max_bound, bound);
    if (std::abs(pair) > cs * (1.0 + 1e-8) + 1e-12 || cs > bound * (1.0 + 1e-8) + 1e-12) rep.chain_holds = false;
  }
  rep.bound_over_sup = rep.h_sup > 0.0 ? rep.max_bound / rep.h_sup : std::numeric_limits<double>::infinity();
  return rep;
}

}  // namespace rittlab
