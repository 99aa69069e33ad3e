// One-sided (Hestenes) Jacobi SVD for complex square matrices.
#include <algorithm>
#include <cmath>
#include <numeric>

#include "rittlab/matrix.hpp"

namespace rittlab {
namespace {

struct JacobiResult {
  std::vector<double> sigma;  // unsorted, column norms of A V
  Matrix v;                   // accumulated right rotations
};

// Orthogonalise the columns of `a` in place. Columns are stored as rows of the
// transpose for contiguous access.
JacobiResult hestenes(const Matrix& a, bool want_v) {
  const std::size_t n = a.dim();
  Matrix u = a.transpose();  // row k of u = column k of a
  Matrix v = want_v ? Matrix::identity(n) : Matrix();
  const double eps = std::numeric_limits<double>::epsilon();
  for (int sweep = 0; sweep < 60; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        double alpha = 0.0, beta = 0.0;
        cplx gamma = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          alpha += std::norm(u(p, i));
          beta += std::norm(u(q, i));
          gamma += std::conj(u(p, i)) * u(q, i);
        }
        const double g = std::abs(gamma);
        if (g == 0.0 || g <= eps * std::sqrt(alpha * beta)) continue;
        rotated = true;
        const cplx phase = gamma / g;
        const double zeta = (beta - alpha) / (2.0 * g);
        const double t = (zeta >= 0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        // [up uq] <- [up uq] * [[c, s*phase], [-s*conj(phase), c]]
        for (std::size_t i = 0; i < n; ++i) {
          const cplx up = u(p, i), uq = u(q, i);
          u(p, i) = c * up - s * std::conj(phase) * uq;
          u(q, i) = s * phase * up + c * uq;
        }
        if (want_v) {
          for (std::size_t i = 0; i < n; ++i) {
            const cplx vp = v(i, p), vq = v(i, q);
            v(i, p) = c * vp - s * std::conj(phase) * vq;
            v(i, q) = s * phase * vp + c * vq;
          }
        }
      }
    }
    if (!rotated) break;
  }
  JacobiResult r;
  r.sigma.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += std::norm(u(k, i));
    r.sigma[k] = std::sqrt(s);
  }
  r.v = std::move(v);
  return r;
}

}  // namespace

std::vector<double> singular_values(const Matrix& a) {
  auto r = hestenes(a, false);
  std::sort(r.sigma.begin(), r.sigma.end(), std::greater<>());
  return r.sigma;
}

TopSingular top_singular(const Matrix& a) {
  TopSingular out;
  const std::size_t n = a.dim();
  if (n == 0) return out;
  auto r = hestenes(a, true);
  const auto k = static_cast<std::size_t>(
      std::max_element(r.sigma.begin(), r.sigma.end()) - r.sigma.begin());
  out.value = r.sigma[k];
  out.right.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.right[i] = r.v(i, k);
  return out;
}

double norm2(const Matrix& a) {
  if (a.empty()) return 0.0;
  const double scale = max_abs_entry(a);
  if (scale == 0.0) return 0.0;
  auto r = hestenes(a, false);
  return *std::max_element(r.sigma.begin(), r.sigma.end());
}

}  // namespace rittlab
