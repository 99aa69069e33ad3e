#include "rittlab/calculus.hpp"

#include <algorithm>
#include <cmath>

#include "rittlab/error.hpp"
#include "rittlab/linalg.hpp"

namespace rittlab {

Analytic::Analytic(Polynomial p) : poly_(std::move(p)) {}
Analytic::Analytic(std::function<cplx(cplx)> f) : fn_(std::move(f)) {
  if (!fn_) throw Error(Errc::InvalidArgument, "empty function");
}

void check_h0(const Analytic& phi, const PeripheralSet& e) {
  if (phi.is_polynomial()) {
    const auto& p = phi.polynomial();
    const double scale = std::max(1.0, p.coeff_norm() * (p.degree() + 1));
    for (std::size_t j = 0; j < e.size(); ++j)
      if (std::abs(p(e[j])) > 1e-10 * scale)
        throw Error(Errc::NotH0, "polynomial does not vanish on E", std::abs(p(e[j])));
    return;
  }
  // Radial approach toward each xi_j must show decay.
  for (std::size_t j = 0; j < e.size(); ++j) {
    const double far = std::abs(phi(e[j] * (1.0 - 1e-2)));
    const double mid = std::abs(phi(e[j] * (1.0 - 1e-5)));
    const double near = std::abs(phi(e[j] * (1.0 - 1e-8)));
    if (!std::isfinite(far) || !std::isfinite(near)) throw Error(Errc::NotH0, "non-finite value near E");
    if (near <= 1e-12) continue;
    if (!(near < 0.5 * far && near <= mid)) throw Error(Errc::NotH0, "no decay toward a point of E", near);
  }
}

namespace {

std::vector<cplx> inner_eigs(std::span<const cplx> eigs, const PeripheralSet& e) {
  std::vector<cplx> in;
  for (auto z : eigs)
    if (!e.nearest_within(z, 1e-6)) in.push_back(z);
  return in;
}

}  // namespace

double choose_contour_radius(std::span<const cplx> eigs, const PeripheralSet& e, double r, double s,
                             const QuadConfig& cfg) {
  if (!(s > 0.0 && s < 1.0)) throw Error(Errc::InvalidArgument, "s must lie in (0,1)", s);
  if (!(r < s)) throw Error(Errc::SpectralClearance, "type r is not below s", r);
  const auto in = inner_eigs(eigs, e);
  for (double f : {0.5, 0.25, 0.75, 0.125, 0.375, 0.625, 0.875}) {
    const double u = r + f * (s - r);
    if (u <= 0.0) continue;
    const auto c = boundary_contour(build_stolz(e, u));
    bool ok = true;
    for (auto z : in)
      if (contour_distance(c, z) < cfg.min_spectral_clearance) {
        ok = false;
        break;
      }
    if (ok) return u;
  }
  throw Error(Errc::SpectralClearance, "no contour radius in (r,s) clears the spectrum", r);
}

std::vector<FCResult> fc_contour_many(std::span<const Analytic> phis, const Matrix& t, const PeripheralSet& e, double s,
                                      const QuadConfig& cfg, std::optional<double> type_r, std::optional<double> u) {
  for (const auto& phi : phis) check_h0(phi, e);
  const auto eigs = eigenvalues(t);
  const double r = type_r ? *type_r : stolz_type(eigs, e);
  const double uu = u ? *u : choose_contour_radius(eigs, e, r, s, cfg);
  const auto contour = boundary_contour(build_stolz(e, uu));

  std::vector<std::function<cplx(cplx)>> fs;
  for (const auto& phi : phis) fs.emplace_back([&phi](cplx z) { return phi(z); });
  auto integral = integrate_resolvent(t, contour, fs, cfg);

  std::vector<FCResult> out;
  for (std::size_t k = 0; k < phis.size(); ++k) {
    FCResult res;
    res.value = std::move(integral.values[k]);
    res.error_estimate = integral.error_estimates[k];
    res.contour_used = contour;
    res.u = uu;
    res.levels = integral.level;
    res.converged = integral.converged;
    res.membership_sampled = !phis[k].is_polynomial();
    out.push_back(std::move(res));
  }
  return out;
}

FCResult fc_contour(const Analytic& phi, const Matrix& t, const PeripheralSet& e, double s, const QuadConfig& cfg,
                    std::optional<double> type_r, std::optional<double> u, bool throw_on_no_convergence) {
  auto res = std::move(fc_contour_many(std::span(&phi, 1), t, e, s, cfg, type_r, u).front());
  if (!res.converged && throw_on_no_convergence)
    throw Error(Errc::NoConvergence, "contour quadrature did not converge", res.error_estimate);
  return res;
}

FCResult fc_dunford_polygon(const Analytic& phi, const Matrix& s, const ConvexPolygon& delta, const QuadConfig& cfg) {
  for (auto z : eigenvalues(s)) {
    if (!delta.contains(z) || delta.boundary_distance(z) < cfg.min_spectral_clearance)
      throw Error(Errc::SpectrumNotEnclosed, "eigenvalue outside the polygon or too close to its boundary",
                  std::abs(z));
  }
  FCResult res;
  res.contour_used = boundary_contour(delta);
  const std::function<cplx(cplx)> f = [&phi](cplx z) { return phi(z); };
  auto integral = integrate_resolvent(s, res.contour_used, std::span(&f, 1), cfg);
  if (!integral.converged)
    throw Error(Errc::NoConvergence, "polygon quadrature did not converge", integral.error_estimates.front());
  res.value = std::move(integral.values.front());
  res.error_estimate = integral.error_estimates.front();
  res.levels = integral.level;
  res.membership_sampled = !phi.is_polynomial();
  return res;
}

LagrangeSplit lagrange_split(const Polynomial& psi, const PeripheralSet& e) {
  const std::size_t n = e.size();
  if (n == 0) throw Error(Errc::InvalidArgument, "empty peripheral set");
  Matrix v(n);
  for (std::size_t j = 0; j < n; ++j) {
    cplx w = 1.0;
    for (std::size_t k = 0; k < n; ++k, w *= e[j]) v(j, k) = w;
  }
  LuDecomposition lu(v);
  if (lu.singular()) throw Error(Errc::IllConditionedNodes, "singular Vandermonde system");
  const Matrix vinv = lu.inverse();
  LagrangeSplit out;
  out.node_condition = norm_one(v) * norm_one(vinv);
  if (out.node_condition > 1e10)
    throw Error(Errc::IllConditionedNodes, "Vandermonde condition exceeds 1e10", out.node_condition);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<cplx> c(n);
    for (std::size_t k = 0; k < n; ++k) c[k] = vinv(k, i);
    out.basis.emplace_back(std::move(c));
  }
  for (std::size_t j = 0; j < n; ++j) out.psi0 += out.basis[j] * psi(e[j]);
  out.psi1 = psi - out.psi0;
  return out;
}

std::vector<std::vector<cplx>> cauchy_split(const Analytic& phi, const ConvexPolygon& delta,
                                            std::span<const std::size_t> split, std::span<const cplx> z_samples,
                                            double tol) {
  const std::size_t m = delta.size();
  for (auto z : z_samples)
    if (delta.boundary_distance(z) < 1e-3) throw Error(Errc::SampleOnPath, "sample within 1e-3 of a path");

  std::vector<std::size_t> cuts(split.begin(), split.end());
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  if (cuts.empty()) cuts.push_back(0);

  double scale = 1.0;
  for (auto v : delta.vertices) scale = std::max(scale, std::abs(phi(v)));
  const cplx inv2pii = 1.0 / cplx(0.0, 2.0 * kPi);

  std::vector<std::vector<cplx>> out(cuts.size(), std::vector<cplx>(z_samples.size()));
  for (std::size_t i = 0; i < cuts.size(); ++i) {
    const std::size_t begin = cuts[i];
    const std::size_t end = cuts.size() == 1 ? begin + m : cuts[(i + 1) % cuts.size()] + (i + 1 == cuts.size() ? m : 0);
    for (std::size_t k = 0; k < z_samples.size(); ++k) {
      const cplx z = z_samples[k];
      cplx acc{};
      for (std::size_t v = begin; v < end; ++v) {
        const auto piece = Piece::segment(delta.vertices[v % m], delta.vertices[(v + 1) % m]);
        acc += integrate_piece(piece, [&](cplx l) { return phi(l) / (l - z); }, tol * scale);
      }
      out[i][k] = acc * inv2pii;
    }
  }
  return out;
}

cplx BivariatePolynomial::operator()(cplx lambda, cplx z) const {
  cplx acc{};
  for (std::size_t i = by_lambda.size(); i-- > 0;) acc = acc * lambda + by_lambda[i](z);
  return acc;
}

Matrix BivariatePolynomial::at(cplx lambda, const Matrix& t) const {
  Matrix acc(t.dim());
  for (std::size_t i = by_lambda.size(); i-- > 0;) {
    acc *= lambda;
    acc += mat_poly(by_lambda[i], t);
  }
  return acc;
}

BivariatePolynomial seifert_Q(const PeripheralSet& e) {
  const Polynomial p = e.vanishing_polynomial();
  const int k = p.degree();
  BivariatePolynomial q;
  if (k < 1) return q;
  // Synthetic division in lambda by (lambda - z); coefficients live in C[z].
  const Polynomial z = Polynomial::monomial(1);
  q.by_lambda.assign(k, Polynomial{});
  q.by_lambda[k - 1] = Polynomial::constant(p.coeff(k));
  for (int i = k - 1; i >= 1; --i) q.by_lambda[i - 1] = Polynomial::constant(p.coeff(i)) + z * q.by_lambda[i];
  const Polynomial rem = Polynomial::constant(p.coeff(0)) - p + z * q.by_lambda[0];
  q.remainder = rem.coeff_norm();
  return q;
}

SeifertResidual seifert_residual(const Matrix& t, const PeripheralSet& e, const BivariatePolynomial& q, cplx lambda,
                                 int n) {
  const std::size_t d = t.dim();
  const Polynomial p = e.vanishing_polynomial();
  const cplx pl = p(lambda);
  const Matrix id = Matrix::identity(d);

  Matrix tn = id;
  Matrix sum(d);  // sum_{k<n} lambda^{n-1-k} T^k
  for (int k = 0; k < n; ++k) {
    sum *= lambda;
    sum += tn;
    tn = tn * t;
  }
  Matrix lam_minus_t = id * lambda - t;

  const Matrix lhs_a = id * (std::pow(lambda, n) * pl);
  const Matrix lhs_b = tn * mat_poly(p, t);
  const Matrix rhs_a = lam_minus_t * sum * pl;
  const Matrix rhs_b = tn * lam_minus_t * q.at(lambda, t);

  SeifertResidual r;
  r.residual = norm2((lhs_a - lhs_b) - (rhs_a + rhs_b));
  r.scale = std::max({norm2(lhs_a), norm2(lhs_b), norm2(rhs_a), norm2(rhs_b)});
  return r;
}

}  // namespace rittlab
