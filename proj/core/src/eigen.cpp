// Eigenvalues of dense complex matrices: Householder reduction to upper
// Hessenberg form followed by single-shift complex QR with Givens rotations.
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "rittlab/error.hpp"
#include "rittlab/linalg.hpp"

namespace rittlab {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

void to_hessenberg(Matrix& h) {
  const std::size_t n = h.dim();
  if (n < 3) return;
  Vector v(n);
  for (std::size_t k = 0; k + 2 < n; ++k) {
    const std::size_t m = n - k - 1;
    double xnorm = 0.0;
    for (std::size_t i = 0; i < m; ++i) xnorm += std::norm(h(k + 1 + i, k));
    xnorm = std::sqrt(xnorm);
    if (xnorm == 0.0) continue;
    const cplx x0 = h(k + 1, k);
    const cplx ph = std::abs(x0) == 0.0 ? cplx(1.0) : x0 / std::abs(x0);
    const cplx alpha = -ph * xnorm;
    for (std::size_t i = 0; i < m; ++i) v[i] = h(k + 1 + i, k);
    v[0] -= alpha;
    double vn = 0.0;
    for (std::size_t i = 0; i < m; ++i) vn += std::norm(v[i]);
    vn = std::sqrt(vn);
    if (vn == 0.0) continue;
    for (std::size_t i = 0; i < m; ++i) v[i] /= vn;
    // H <- (I - 2 v v^*) H
    for (std::size_t j = k; j < n; ++j) {
      cplx w = 0.0;
      for (std::size_t i = 0; i < m; ++i) w += std::conj(v[i]) * h(k + 1 + i, j);
      w *= 2.0;
      for (std::size_t i = 0; i < m; ++i) h(k + 1 + i, j) -= v[i] * w;
    }
    // H <- H (I - 2 v v^*)
    for (std::size_t i = 0; i < n; ++i) {
      cplx w = 0.0;
      for (std::size_t j = 0; j < m; ++j) w += h(i, k + 1 + j) * v[j];
      w *= 2.0;
      for (std::size_t j = 0; j < m; ++j) h(i, k + 1 + j) -= w * std::conj(v[j]);
    }
    h(k + 1, k) = alpha;
    for (std::size_t i = 1; i < m; ++i) h(k + 1 + i, k) = 0.0;
  }
}

struct Givens {
  double c;
  cplx s;
};

// G = [[c, s], [-conj(s), c]] with G [a; b] = [r; 0].
Givens make_givens(cplx a, cplx b) {
  const double r = std::hypot(std::abs(a), std::abs(b));
  if (r == 0.0) return {1.0, 0.0};
  if (std::abs(a) == 0.0) return {0.0, 1.0};
  const double aa = std::abs(a);
  return {aa / r, (a / aa) * std::conj(b) / r};
}

// Eigenvalue of [[a, b], [c, d]] closest to d.
cplx wilkinson_shift(cplx a, cplx b, cplx c, cplx d) {
  const cplx tr = 0.5 * (a + d);
  const cplx disc = std::sqrt(0.25 * (a - d) * (a - d) + b * c);
  const cplx l1 = tr + disc, l2 = tr - disc;
  return std::abs(l1 - d) < std::abs(l2 - d) ? l1 : l2;
}

}  // namespace

std::vector<cplx> eigenvalues(const Matrix& t, std::size_t max_sweeps) {
  const std::size_t n = t.dim();
  std::vector<cplx> eig(n);
  if (n == 0) return eig;
  if (max_sweeps == 0) max_sweeps = 100 * n;
  Matrix h = t;
  to_hessenberg(h);
  const double hnorm = std::max(norm_frobenius(h), std::numeric_limits<double>::min());

  std::vector<Givens> rot(n);
  std::size_t hi = n - 1;
  std::size_t total = 0;
  int iter = 0;
  while (true) {
    if (hi == 0) {
      eig[0] = h(0, 0);
      break;
    }
    // Locate the start of the active unreduced block.
    std::size_t l = hi;
    while (l > 0) {
      double scale = std::abs(h(l - 1, l - 1)) + std::abs(h(l, l));
      if (scale == 0.0) scale = hnorm;
      if (std::abs(h(l, l - 1)) <= kEps * scale) {
        h(l, l - 1) = 0.0;
        break;
      }
      --l;
    }
    if (l == hi) {
      eig[hi] = h(hi, hi);
      --hi;
      iter = 0;
      continue;
    }
    if (++total > max_sweeps) {
      throw Error(Errc::NoConvergence, "shifted QR did not converge", static_cast<double>(total));
    }
    ++iter;
    cplx mu;
    if (iter % 10 == 0) {
      // Exceptional shift to break cycles.
      mu = h(hi, hi) + 1.5 * std::abs(h(hi, hi - 1)) * cplx(std::cos(iter * 0.7), std::sin(iter * 0.7));
    } else {
      mu = wilkinson_shift(h(hi - 1, hi - 1), h(hi - 1, hi), h(hi, hi - 1), h(hi, hi));
    }
    for (std::size_t k = l; k <= hi; ++k) h(k, k) -= mu;
    for (std::size_t k = l; k < hi; ++k) {
      const Givens g = make_givens(h(k, k), h(k + 1, k));
      rot[k] = g;
      for (std::size_t j = k; j <= hi; ++j) {
        const cplx x = h(k, j), y = h(k + 1, j);
        h(k, j) = g.c * x + g.s * y;
        h(k + 1, j) = -std::conj(g.s) * x + g.c * y;
      }
    }
    for (std::size_t k = l; k < hi; ++k) {
      const Givens g = rot[k];
      const std::size_t top = std::min(k + 2, hi);
      for (std::size_t i = l; i <= top; ++i) {
        const cplx x = h(i, k), y = h(i, k + 1);
        h(i, k) = x * g.c + y * std::conj(g.s);
        h(i, k + 1) = -x * g.s + y * g.c;
      }
    }
    for (std::size_t k = l; k <= hi; ++k) h(k, k) += mu;
  }
  return eig;
}

double Spectrum::spectral_radius() const {
  double r = 0.0;
  for (const auto& e : eigenvalues) r = std::max(r, std::abs(e.value));
  return r;
}

Spectrum spectrum(const Matrix& t, const SpectrumOptions& opt) {
  const std::size_t n = t.dim();
  if (n > opt.max_dim) throw Error(Errc::InvalidArgument, "dimension exceeds spectrum max_dim");
  const auto raw = eigenvalues(t);
  double lmax = 1.0;
  for (auto z : raw) lmax = std::max(lmax, std::abs(z));
  const double tol = opt.cluster_tolerance * lmax;

  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::abs(raw[i] - raw[j]) <= tol) parent[find(i)] = find(j);

  std::vector<std::vector<std::size_t>> groups;
  std::vector<long> slot(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    const auto r = find(i);
    if (slot[r] < 0) {
      slot[r] = static_cast<long>(groups.size());
      groups.emplace_back();
    }
    groups[static_cast<std::size_t>(slot[r])].push_back(i);
  }

  const double tnorm = norm2(t);
  Spectrum out;
  out.cluster_tolerance = tol;
  for (const auto& g : groups) {
    cplx mean = 0.0;
    for (auto i : g) mean += raw[i];
    mean /= static_cast<double>(g.size());
    double spread = 0.0;
    for (auto i : g) spread = std::max(spread, std::abs(raw[i] - mean));
    Eigenvalue ev;
    ev.value = mean;
    ev.multiplicity = static_cast<int>(g.size());
    if (g.size() > 1) {
      Matrix shifted = t;
      shifted.add_identity(-mean);
      const auto sv = singular_values(shifted);
      const double thr = std::max(opt.rank_tolerance * std::max(tnorm, 1e-300), 10.0 * spread);
      const auto nullity = std::count_if(sv.begin(), sv.end(), [&](double s) { return s <= thr; });
      ev.semisimple = nullity >= static_cast<long>(g.size());
    }
    out.eigenvalues.push_back(ev);
  }
  std::sort(out.eigenvalues.begin(), out.eigenvalues.end(), [](const Eigenvalue& a, const Eigenvalue& b) {
    if (std::abs(a.value) != std::abs(b.value)) return std::abs(a.value) > std::abs(b.value);
    return std::arg(a.value) < std::arg(b.value);
  });
  return out;
}

}  // namespace rittlab
