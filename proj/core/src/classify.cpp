#include "rittlab/classify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "maximize.hpp"
#include "rittlab/error.hpp"

namespace rittlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double norm_p(const Matrix& m, double p) {
  if (std::abs(p - 2.0) < 1e-15) return norm2(m);
  return op_norm(m, p, {.restarts = 1}).value;
}

}  // namespace

std::vector<cplx> annulus_grid(const PeripheralSet& e, const SamplerConfig& cfg) {
  std::vector<double> angles;
  for (int i = 0; i < cfg.angular; ++i) angles.push_back(2.0 * kPi * i / cfg.angular);
  for (std::size_t j = 0; j < e.size(); ++j) {
    angles.push_back(e.arg(j));
    for (int m = 1; m <= cfg.vertex_refine; ++m) {
      angles.push_back(e.arg(j) + std::ldexp(1.0, -m));
      angles.push_back(e.arg(j) - std::ldexp(1.0, -m));
    }
  }
  std::vector<cplx> z;
  for (int k = 1; k <= cfg.k_max; ++k) {
    const double rad = 1.0 + std::ldexp(1.0, -k);
    if (rad >= cfg.outer) continue;
    for (double a : angles) z.push_back(std::polar(rad, a));
  }
  return z;
}

ResolventConstant resolvent_constant_on(const Matrix& t, const PeripheralSet& e, double p, std::span<const cplx> z) {
  ResolventConstant out;
  out.z.assign(z.begin(), z.end());
  for (auto w : z) {
    double v = kInf;
    try {
      v = e.distance_product(w) * norm_p(resolvent_matrix(t, w), p);
    } catch (const Error&) {
    }
    out.values.push_back(v);
    if (v > out.c_hat || out.values.size() == 1) {
      out.c_hat = v;
      out.argmax = w;
    }
  }
  return out;
}

ResolventConstant resolvent_constant(const Matrix& t, const PeripheralSet& e, double p, const SamplerConfig& cfg) {
  const auto grid = annulus_grid(e, cfg);
  auto out = resolvent_constant_on(t, e, p, grid);
  for (std::size_t j = 0; j < e.size(); ++j) {
    std::vector<double> dist, nrm;
    for (int k = cfg.slope_k_min; k <= cfg.k_max; ++k) {
      const double eps = std::ldexp(1.0, -k);
      double v = kInf;
      try {
        v = norm_p(resolvent_matrix(t, e[j] * (1.0 + eps)), p);
      } catch (const Error&) {
      }
      dist.push_back(eps);
      nrm.push_back(v);
    }
    const bool finite = std::all_of(nrm.begin(), nrm.end(), [](double v) { return std::isfinite(v); });
    out.exponents.push_back(finite ? -loglog_slope(dist, nrm) : kInf);
  }
  return out;
}

FdVerdict is_ritt_e_fd(const Matrix& t, const PeripheralSet& e, double tol) {
  FdVerdict v;
  try {
    v.spectrum = spectrum(t);
  } catch (const Error& err) {
    throw Error(Errc::SpectrumFailed, err.what());
  }
  v.ritt = true;
  for (const auto& ev : v.spectrum.eigenvalues) {
    const double m = std::abs(ev.value);
    if (m > 1.0 + tol) {
      v.ritt = false;
      v.reason = "eigenvalue outside the closed unit disc";
      if (!e.nearest_within(ev.value, tol)) v.near_boundary = m < 1.0 + tol;
      break;
    }
    if (m < 1.0 - tol) continue;
    if (!e.nearest_within(ev.value, tol)) {
      v.ritt = false;
      v.near_boundary = true;
      v.reason = "NEAR_BOUNDARY: unimodular-range eigenvalue away from E";
      break;
    }
    if (!ev.semisimple) {
      v.ritt = false;
      v.reason = "defective eigenvalue on E";
      break;
    }
  }
  return v;
}

double ritt_type(const Matrix& t, const PeripheralSet& e, double tol) {
  const auto v = is_ritt_e_fd(t, e, tol);
  if (!v.ritt) throw Error(Errc::NotRittE, v.reason);
  std::vector<cplx> vals;
  for (const auto& ev : v.spectrum.eigenvalues) vals.push_back(ev.value);
  return stolz_type(vals, e, tol);
}

RittReport classify(const Matrix& t, const PeripheralSet& e, double p, const SamplerConfig& cfg) {
  RittReport rep;
  rep.fd = is_ritt_e_fd(t, e);
  rep.oracle_verdict = rep.fd.ritt;
  const auto rc = resolvent_constant(t, e, p, cfg);
  rep.c_hat = rc.c_hat;
  rep.growth_exponents = rc.exponents;
  bool inclusion = true;
  for (const auto& ev : rep.fd.spectrum.eigenvalues) {
    const double m = std::abs(ev.value);
    if (m > 1.0 + 1e-6 || (m >= 1.0 - 1e-6 && !e.nearest_within(ev.value, 1e-6))) inclusion = false;
  }
  rep.sampling_verdict =
      inclusion && std::all_of(rc.exponents.begin(), rc.exponents.end(), [](double x) { return x <= 1.1; });
  rep.is_ritt = rep.oracle_verdict;
  if (rep.is_ritt) {
    std::vector<cplx> vals;
    for (const auto& ev : rep.fd.spectrum.eigenvalues) vals.push_back(ev.value);
    rep.r_star = stolz_type(vals, e);
  }
  return rep;
}

PeripheralSet auto_peripheral_set(const Matrix& t, double tol) {
  std::vector<cplx> pts;
  for (const auto& ev : spectrum(t).eigenvalues)
    if (std::abs(std::abs(ev.value) - 1.0) <= tol) pts.push_back(ev.value / std::abs(ev.value));
  if (pts.empty()) throw Error(Errc::InvalidArgument, "no eigenvalues on the unit circle");
  return PeripheralSet(std::move(pts));
}

// ---------------------------------------------------------------------------
// Sectoriality of A_j

TransferResiduals transfer_residuals(const Matrix& t, cplx xi, cplx lambda, cplx z) {
  Matrix a = t * (-std::conj(xi));
  a.add_identity(1.0);
  TransferResiduals r;
  {
    const Matrix lhs = resolvent_matrix(a, lambda) * lambda;
    const Matrix rhs = resolvent_matrix(t, xi * (1.0 - lambda)) * (-lambda * xi);
    r.transfer1 = norm2(lhs - rhs) / std::max({norm2(lhs), norm2(rhs), 1e-300});
  }
  {
    const Matrix lhs = resolvent_matrix(t, z) * (xi - z);
    const Matrix rhs = resolvent_matrix(a, 1.0 - std::conj(xi) * z) * (-std::conj(xi) * (xi - z));
    r.transfer3 = norm2(lhs - rhs) / std::max({norm2(lhs), norm2(rhs), 1e-300});
  }
  return r;
}

std::vector<double> default_nu_grid() {
  std::vector<double> g;
  for (int k = 1; k <= 24; ++k) g.push_back(kPi * k / 40.0);
  return g;
}

SectorialReport sectorial_constant(const Matrix& t, const PeripheralSet& e, std::size_t j,
                                   std::span<const double> nu_grid, const SectorialConfig& cfg) {
  if (j >= e.size()) throw Error(Errc::InvalidArgument, "peripheral index out of range");
  const cplx xi = e[j];
  Matrix a = t * (-std::conj(xi));
  a.add_identity(1.0);

  SectorialReport rep;
  for (auto mu : eigenvalues(a))
    if (std::abs(mu) > 1e-10) rep.spectral_angle = std::max(rep.spectral_angle, std::abs(std::arg(mu)));

  const double eps = std::numeric_limits<double>::epsilon();
  for (double nu : nu_grid) {
    double k = 0.0;
    for (double sgn : {1.0, -1.0}) {
      const cplx dir = std::polar(1.0, sgn * nu);
      for (int i = 0; i < cfg.per_ray && std::isfinite(k); ++i) {
        const double tt = cfg.t_min * std::pow(cfg.t_max / cfg.t_min, static_cast<double>(i) / (cfg.per_ray - 1));
        const cplx lambda = dir * tt;
        ResolventResult ra;
        try {
          ra = resolvent(a, lambda);
        } catch (const Error&) {
          k = kInf;
          break;
        }
        const Matrix lra = ra.value * lambda;
        k = std::max(k, norm_p(lra, cfg.p));
        // Transfer identities at this sample; z = xi (1 - lambda) makes 1 - conj(xi) z = lambda.
        const Matrix rhs = resolvent_matrix(t, xi * (1.0 - lambda)) * (-lambda * xi);
        const double scale = std::max({norm2(lra), norm2(rhs), 1e-300});
        const double r1 = norm2(lra - rhs) / scale;
        const cplx z = xi * (1.0 - lambda);
        const Matrix l3 = resolvent_matrix(t, z) * (xi - z);
        const Matrix r3 = ra.value * (-std::conj(xi) * (xi - z));
        const double r3v = norm2(l3 - r3) / std::max({norm2(l3), norm2(r3), 1e-300});
        ++rep.samples;
        rep.transfer1_residual = std::max(rep.transfer1_residual, r1);
        rep.transfer3_residual = std::max(rep.transfer3_residual, r3v);
        const double allowed = std::max(1e-9, 1e3 * ra.condition * eps);
        if (r1 > allowed || r3v > allowed)
          throw Error(Errc::TransferViolation, "transfer identity residual too large", std::max(r1, r3v));
      }
    }
    rep.nu.push_back(nu);
    rep.k_nu.push_back(k);
  }
  // Smallest grid angle containing the spectrum from which every larger angle has a moderate K.
  rep.omega_hat = kPi;
  for (std::size_t i = rep.nu.size(); i-- > 0;) {
    if (!(rep.k_nu[i] <= cfg.k_cap) || rep.nu[i] < rep.spectral_angle) break;
    rep.omega_hat = rep.nu[i];
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Constants from power and difference sequences

double seifert_sup(const Matrix& t, const BivariatePolynomial& q, double p, int samples) {
  std::vector<Matrix> coeff;
  for (const auto& qi : q.by_lambda) coeff.push_back(mat_poly(qi, t));
  if (coeff.empty()) return 0.0;
  auto f = [&](double a) {
    const cplx lambda = std::polar(2.0, a);
    Matrix acc(t.dim());
    for (std::size_t i = coeff.size(); i-- > 0;) {
      acc *= lambda;
      acc += coeff[i];
    }
    return norm_p(acc, p);
  };
  std::vector<double> ts(samples + 1);
  for (int i = 0; i <= samples; ++i) ts[i] = 2.0 * kPi * i / samples;
  return detail::sampled_max(f, ts, 8);
}

PowerCertificate power_certificate(const Matrix& t, const PeripheralSet& e, double p, int nmax,
                                  const SamplerConfig& cfg) {
  PowerCertificate c;
  c.sequences = power_and_difference_bounds(t, e.points(), p, nmax);
  c.c0 = c.sequences.c0;
  c.c1 = c.sequences.c1;
  if (c.sequences.overflow || !(c.c0 <= 1e15) || !(c.c1 <= 1e15))
    throw Error(Errc::DivergentSequences, "power sequences exceed 1e15", c.c0);
  c.c_q = seifert_sup(t, seifert_Q(e), p);
  c.apriori_bound = 2.0 * c.c0 * (2.0 * c.c1 + std::pow(3.0, static_cast<double>(e.size())) + c.c_q);
  c.c_hat = resolvent_constant(t, e, p, cfg).c_hat;
  c.consistent = c.c_hat <= c.apriori_bound * (1.0 + 1e-2);
  return c;
}

GammaReport gamma_n_reconstruction(const Matrix& t, const PeripheralSet& e, double s, std::span<const int> n_list,
                                   const QuadConfig& cfg) {
  GammaReport rep;
  rep.n0 = gamma_n_threshold(e, s);
  for (int n : n_list) {
    const auto g = gamma_n(e, s, n);
    GammaRow row;
    row.n = n;
    const std::function<cplx(cplx)> f = [n](cplx l) { return std::pow(l, n); };
    auto integral = integrate_resolvent(t, g.contour, std::span(&f, 1), cfg);
    Matrix tn = Matrix::identity(t.dim());
    for (int k = 0; k < n; ++k) tn = tn * t;
    row.residual = norm2(integral.values.front() - tn) / std::max(1.0, norm2(tn));
    row.error_estimate = integral.error_estimates.front();
    row.converged = integral.converged;

    const auto power = [n](cplx l) { return n * std::pow(std::abs(l), n - 1); };
    const auto weighted = [&e, n](cplx l) { return std::pow(std::abs(l), n) / e.distance_product(l); };
    for (std::size_t i = 0; i < g.contour.pieces.size(); ++i) {
      const auto& piece = g.contour.pieces[i];
      const double pi = integrate_piece_abs(piece, power, 1e-12);
      row.power_integral += pi;
      row.weighted += integrate_piece_abs(piece, weighted, 1e-12);
      if (std::find(g.small_arcs.begin(), g.small_arcs.end(), i) != g.small_arcs.end())
        row.small_circle = std::max(row.small_circle, pi);
      if (std::find(g.outer_arcs.begin(), g.outer_arcs.end(), i) != g.outer_arcs.end()) row.outer_arcs += pi;
    }
    row.outer_bound = 2.0 * kPi * n * std::pow(s, n - 1);
    rep.rows.push_back(row);
  }
  return rep;
}

PolygonResult certified_polygon(const Matrix& t, const PeripheralSet& e, const PolygonConfig& cfg) {
  const auto v = is_ritt_e_fd(t, e);
  if (!v.ritt) throw Error(Errc::NotRittE, v.reason);
  std::vector<cplx> vals;
  for (const auto& ev : v.spectrum.eigenvalues) vals.push_back(ev.value);
  return build_polygon(vals, e, cfg);
}

}  // namespace rittlab
