#include "rittlab/lp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "rittlab/classify.hpp"
#include "rittlab/error.hpp"

namespace rittlab {

NormResult regular_norm(const Matrix& t, double p) {
  if (!(p > 1.0 && std::isfinite(p))) throw Error(Errc::InvalidArgument, "p must lie in (1, inf)", p);
  return op_norm(t.modulus(), p);
}

RegularOperator make_regular(Matrix t, double p) {
  RegularOperator op;
  const auto n = regular_norm(t, p);
  op.t = std::move(t);
  op.p = p;
  op.regular_norm = n.value;
  op.certificate = n.certificate;
  op.contractively_regular = n.value <= 1.0 + 1e-10;
  return op;
}

SemigroupReport semigroup_regular_check(const Matrix& t, const PeripheralSet& e, double p,
                                        std::span<const double> t_grid) {
  static constexpr double kDefaultGrid[] = {0.1, 1.0, 10.0};
  if (t_grid.empty()) t_grid = kDefaultGrid;
  const double tr = regular_norm(t, p).value;
  if (tr > 1.0 + 1e-10) throw Error(Errc::NotContractive, "regular norm exceeds 1", tr);

  SemigroupReport rep;
  rep.all_ok = true;
  for (std::size_t j = 0; j < e.size(); ++j) {
    Matrix a = t * (-std::conj(e[j]));
    a.add_identity(1.0);
    for (double tt : t_grid) {
      SemigroupRow row{j, tt};
      row.regular_norm = regular_norm(mat_exp(a * (-tt)), p).value;
      row.majorant = std::exp(-tt) * std::exp(tt * tr);
      row.ok = row.regular_norm <= 1.0 + 1e-8;
      rep.all_ok = rep.all_ok && row.ok;
      rep.max_norm = std::max(rep.max_norm, row.regular_norm);
      rep.rows.push_back(row);
    }
  }
  return rep;
}

std::vector<int> cycle_orders_for(const PeripheralSet& e) {
  if (e.empty()) throw Error(Errc::UnrealizableE, "empty peripheral set");
  std::vector<int> orders;
  for (std::size_t j = 0; j < e.size(); ++j) {
    const double turns = e.arg(j) / (2.0 * kPi);
    int order = 0;
    for (int k = 1; k <= 64 && order == 0; ++k)
      if (std::abs(k * turns - std::round(k * turns)) < 1e-9) order = k;
    if (order == 0) throw Error(Errc::UnrealizableE, "point of E is not a root of unity of order <= 64", e.arg(j));
    for (int m = 0; m < order; ++m)
      if (!e.nearest_within(std::polar(1.0, 2.0 * kPi * m / order), 1e-9))
        throw Error(Errc::UnrealizableE, "E misses part of a root-of-unity group", order);
    orders.push_back(order);
  }
  std::sort(orders.begin(), orders.end());
  orders.erase(std::unique(orders.begin(), orders.end()), orders.end());
  // Drop groups contained in a larger one.
  std::vector<int> minimal;
  for (int k : orders)
    if (std::none_of(orders.begin(), orders.end(), [k](int m) { return m != k && m % k == 0; })) minimal.push_back(k);
  return minimal;
}

PeripheralSet peripheral_set_for(std::span<const int> orders) {
  std::vector<cplx> pts;
  for (int k : orders) {
    if (k < 1) throw Error(Errc::UnrealizableE, "cycle order must be positive", k);
    for (int m = 0; m < k; ++m) {
      const cplx z = std::polar(1.0, 2.0 * kPi * m / k);
      if (std::none_of(pts.begin(), pts.end(), [&](cplx w) { return std::abs(w - z) < 1e-9; })) pts.push_back(z);
    }
  }
  return PeripheralSet(std::move(pts));
}

namespace {

Matrix sample_block(std::size_t m, const LpEnsembleConfig& cfg, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Matrix b(m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) b(i, j) = u(rng);
  if (cfg.symmetric_block) b = (b + b.transpose()) * 0.5;
  double rho = 0.0;
  for (auto z : eigenvalues(b)) rho = std::max(rho, std::abs(z));
  const double nrm = op_norm(b, cfg.p).value;
  // A hair below both limits so that rounding cannot push a sample over.
  const double scale = (1.0 - 1e-12) * std::min((1.0 - cfg.gap) / rho, 1.0 / nrm);
  return b * scale;
}

}  // namespace

std::vector<RegularOperator> ensemble_positive_ritt(const LpEnsembleConfig& cfg) {
  if (!(cfg.gap > 0.0 && cfg.gap < 1.0)) throw Error(Errc::InvalidArgument, "gap must lie in (0,1)", cfg.gap);
  if (cfg.cycle_orders.empty()) throw Error(Errc::UnrealizableE, "no root-of-unity groups requested");
  const PeripheralSet e = peripheral_set_for(cfg.cycle_orders);
  const std::size_t cyc = std::accumulate(cfg.cycle_orders.begin(), cfg.cycle_orders.end(), std::size_t{0});
  if (cyc > cfg.dim) throw Error(Errc::UnrealizableE, "cycle blocks do not fit in the dimension", cyc);
  const std::size_t rest = cfg.dim - cyc;

  std::mt19937_64 rng(cfg.seed);
  std::vector<RegularOperator> out;
  for (int s = 0; s < cfg.count; ++s) {
    bool emitted = false;
    for (int attempt = 0; attempt < cfg.max_attempts && !emitted; ++attempt) {
      Matrix t(cfg.dim);
      std::size_t off = 0;
      for (int k : cfg.cycle_orders) {
        for (int i = 0; i < k; ++i) t(off + (i + 1) % k, off + i) = 1.0;
        off += k;
      }
      if (rest > 0) {
        const Matrix b = sample_block(rest, cfg, rng);
        for (std::size_t i = 0; i < rest; ++i)
          for (std::size_t j = 0; j < rest; ++j) t(off + i, off + j) = b(i, j);
      }
      std::vector<std::size_t> perm(cfg.dim);
      std::iota(perm.begin(), perm.end(), 0);
      std::shuffle(perm.begin(), perm.end(), rng);
      Matrix pt(cfg.dim);
      for (std::size_t i = 0; i < cfg.dim; ++i)
        for (std::size_t j = 0; j < cfg.dim; ++j) pt(i, j) = t(perm[i], perm[j]);

      auto op = make_regular(std::move(pt), cfg.p);
      if (!op.contractively_regular || !is_ritt_e_fd(op.t, e).ritt) continue;
      out.push_back(std::move(op));
      emitted = true;
    }
    if (!emitted) throw Error(Errc::UnrealizableE, "no certified sample within the attempt budget", s);
  }
  return out;
}

LpExperimentReport positive_ensemble_experiment(const LpEnsembleConfig& cfg, std::span<const double> s_grid,
                                                int max_degree, const ProbeConfig& probe) {
  LpExperimentReport rep;
  rep.e = peripheral_set_for(cfg.cycle_orders);
  const auto ensemble = ensemble_positive_ritt(cfg);
  ProbeConfig pc = probe;
  pc.max_degree = max_degree;
  const int d0 = max_degree >= 50 ? 25 : max_degree / 2;

  rep.all_finite = rep.all_stable = rep.all_semigroup_ok = true;
  for (const auto& op : ensemble) {
    LpSampleReport s;
    s.regular_norm = op.regular_norm;
    s.r_star = ritt_type(op.t, rep.e);
    s.finite = true;
    s.degree_stable = true;
    auto judge = [&](const ConstantEstimate& k) {
      s.finite = s.finite && std::isfinite(k.k_lower);
      s.degree_stable = s.degree_stable && k.growth(d0, max_degree) < 0.1;
    };
    for (double sv : s_grid) {
      if (!(sv > s.r_star + 1e-9 && sv < 1.0)) continue;
      s.stolz.push_back({sv, calculus_constant(op.t, build_stolz(rep.e, sv), op.p, pc)});
      judge(s.stolz.back().estimate);
    }
    const auto poly = certified_polygon(op.t, rep.e);
    s.polygon_vertices = poly.delta.size();
    s.polygon = calculus_constant(op.t, poly.delta, op.p, pc);
    judge(s.polygon);
    s.semigroup = semigroup_regular_check(op.t, rep.e, op.p);

    rep.all_finite = rep.all_finite && s.finite;
    rep.all_stable = rep.all_stable && s.degree_stable;
    rep.all_semigroup_ok = rep.all_semigroup_ok && s.semigroup.all_ok;
    rep.samples.push_back(std::move(s));
  }
  return rep;
}

}  // namespace rittlab
