#include "rittlab/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "rittlab/error.hpp"

namespace rittlab {

ResolventResult resolvent(const Matrix& t, cplx z, const ResolventOptions& opt) {
  Matrix a = t * cplx(-1.0);
  a.add_identity(z);
  const double anorm = norm_one(a);
  LuDecomposition lu(a);
  if (lu.singular()) throw Error(Errc::Singular, "zI - T is singular to working precision", std::abs(z));
  ResolventResult r;
  r.value = lu.inverse();
  r.condition = anorm * norm_one(r.value);
  r.ill_conditioned = !(r.condition <= opt.condition_cap);
  return r;
}

Matrix resolvent_matrix(const Matrix& t, cplx z) { return resolvent(t, z).value; }

// ---------------------------------------------------------------------------
// op_norm

namespace {

// x -> |x|^{e} sign(x), with the max modulus scaled out first.
Vector dual_map(std::span<const cplx> x, double e) {
  double m = 0.0;
  for (auto z : x) m = std::max(m, std::abs(z));
  Vector y(x.size());
  if (m == 0.0) return y;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double a = std::abs(x[i]);
    if (a == 0.0) continue;
    y[i] = (x[i] / a) * std::pow(a / m, e);
  }
  return y;
}

void normalize(Vector& x, double p) {
  const double n = vector_norm(x, p);
  if (n > 0.0)
    for (auto& z : x) z /= n;
}

struct Ascent {
  double value = 0.0;
  Vector x;
  bool converged = false;
};

// Higham's generalisation of Boyd's p-norm power method.
Ascent power_ascent(const Matrix& t, Vector x, double p, const NormOptions& opt) {
  const double q = p / (p - 1.0);
  normalize(x, p);
  Ascent best{vector_norm(t.apply(x), p), x, false};
  double prev = best.value;
  for (int it = 0; it < opt.max_iter; ++it) {
    const Vector y = t.apply(x);
    const Vector w = dual_map(y, p - 1.0);
    const Vector z = t.apply_adjoint(w);
    Vector xn = dual_map(z, q - 1.0);
    normalize(xn, p);
    if (vector_norm(xn, p) == 0.0) break;
    const double val = vector_norm(t.apply(xn), p);
    x = std::move(xn);
    if (val > best.value) best = {val, x, false};
    if (std::abs(val - prev) <= opt.tol * std::max(val, 1e-300)) {
      best.converged = true;
      break;
    }
    prev = val;
  }
  return best;
}

}  // namespace

NormResult op_norm(const Matrix& t, double p, const NormOptions& opt) {
  if (!(p > 1.0) || !std::isfinite(p)) throw Error(Errc::InvalidArgument, "op_norm needs p in (1, inf)", p);
  const std::size_t n = t.dim();
  NormResult out;
  if (n == 0) {
    out.certificate = Certificate::Exact;
    return out;
  }
  if (p == 2.0) {
    auto ts = top_singular(t);
    out.value = ts.value;
    out.maximizer = std::move(ts.right);
    out.certificate = Certificate::Exact;
    return out;
  }

  auto consider = [&](const Ascent& a) {
    if (a.value > out.value) {
      out.value = a.value;
      out.maximizer = a.x;
    }
  };
  // Basis vectors are cheap and catch the p -> 1 column-sum regime.
  for (std::size_t k = 0; k < n; ++k) {
    Vector e(n);
    e[k] = 1.0;
    consider({vector_norm(t.apply(e), p), e, false});
  }

  const bool nonneg = t.is_nonnegative();
  Vector ones(n, cplx(1.0));
  const Ascent pos = power_ascent(nonneg ? t : t.modulus(), ones, p, opt);
  if (nonneg) {
    consider(pos);
    out.certificate = pos.converged && out.value <= pos.value * (1.0 + 1e-9) ? Certificate::Exact
                                                                             : Certificate::Lower;
    if (out.certificate == Certificate::Exact) out.value = std::max(out.value, pos.value);
    return out;
  }
  // The Perron vector of |T| is a good phase-free start for general T.
  consider(power_ascent(t, pos.x, p, opt));
  std::mt19937_64 rng(opt.seed);
  std::normal_distribution<double> g;
  for (int r = 0; r < opt.restarts; ++r) {
    Vector x(n);
    for (auto& z : x) z = cplx(g(rng), g(rng));
    consider(power_ascent(t, std::move(x), p, opt));
  }
  out.certificate = Certificate::Lower;
  return out;
}

// ---------------------------------------------------------------------------
// mat_exp

Matrix mat_exp(const Matrix& a) {
  const std::size_t n = a.dim();
  if (norm2(a) > 1e4) throw Error(Errc::Overflow, "mat_exp: ||A||_2 exceeds 1e4", norm2(a));
  static constexpr double b[] = {64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
                                 1187353796428800.0,  129060195264000.0,   10559470521600.0,
                                 670442572800.0,      33522128640.0,       1323241920.0,
                                 40840800.0,          960960.0,            16380.0,
                                 182.0,               1.0};
  constexpr double theta13 = 5.371920351148152;
  const double an = norm_one(a);
  int s = 0;
  if (an > theta13) s = static_cast<int>(std::ceil(std::log2(an / theta13)));
  const Matrix as = a * cplx(std::ldexp(1.0, -s));
  const Matrix id = Matrix::identity(n);
  const Matrix a2 = as * as;
  const Matrix a4 = a2 * a2;
  const Matrix a6 = a4 * a2;
  Matrix inner_u = a6 * b[13] + a4 * b[11] + a2 * b[9];
  Matrix u = as * (a6 * inner_u + a6 * b[7] + a4 * b[5] + a2 * b[3] + id * b[1]);
  Matrix inner_v = a6 * b[12] + a4 * b[10] + a2 * b[8];
  Matrix v = a6 * inner_v + a6 * b[6] + a4 * b[4] + a2 * b[2] + id * b[0];
  LuDecomposition lu(v - u);
  Matrix r = lu.solve(v + u);
  for (int k = 0; k < s; ++k) r = r * r;
  return r;
}

// ---------------------------------------------------------------------------
// Power and difference sequences

PowerBounds power_and_difference_bounds(const Matrix& t, std::span<const cplx> e, double p, int nmax,
                                        bool throw_on_overflow) {
  if (nmax < 1) throw Error(Errc::InvalidArgument, "nmax must be >= 1", nmax);
  NormOptions nopt;
  nopt.restarts = 2;
  auto norm = [&](const Matrix& m) { return p == 2.0 ? norm2(m) : op_norm(m, p, nopt).value; };
  const Matrix pe = mat_poly(Polynomial::vanishing_on(e), t);
  PowerBounds out;
  Matrix pw = Matrix::identity(t.dim());  // T^{n-1}
  out.power_norms.push_back(t.dim() ? 1.0 : 0.0);
  out.c0 = out.power_norms.back();
  for (int n = 1; n <= nmax; ++n) {
    const double d = static_cast<double>(n) * norm(pw * pe);
    out.difference_norms.push_back(d);
    out.c1 = std::max(out.c1, d);
    pw = pw * t;
    const double pn = norm(pw);
    out.power_norms.push_back(pn);
    out.c0 = std::max(out.c0, pn);
    if (!(pn <= 1e15) || !(d <= 1e15)) {
      out.overflow = true;
      if (throw_on_overflow) throw Error(Errc::Overflow, "power sequence exceeds 1e15", n);
      break;
    }
  }
  return out;
}

double loglog_slope(std::span<const double> x, std::span<const double> y) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  double m = 0;
  for (std::size_t i = 0; i < std::min(x.size(), y.size()); ++i) {
    if (!(x[i] > 0) || !(y[i] > 0)) continue;
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    m += 1;
  }
  const double den = m * sxx - sx * sx;
  if (m < 2 || den == 0.0) return 0.0;
  return (m * sxy - sx * sy) / den;
}

}  // namespace rittlab
