#include "rittlab/samplers.hpp"

#include <cmath>

#include "rittlab/error.hpp"

namespace rittlab {

Matrix random_matrix(std::size_t dim, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0 / std::sqrt(2.0 * dim));
  Matrix m(dim);
  for (auto& x : m.data()) x = {g(rng), g(rng)};
  return m;
}

Matrix random_contraction(std::size_t dim, std::mt19937_64& rng, double min_scale) {
  Matrix g = random_matrix(dim, rng);
  std::uniform_real_distribution<double> u(min_scale, 1.0);
  const double s = u(rng);
  return g * (s / norm2(g));
}

Matrix random_ritt_e(std::size_t dim, const PeripheralSet& e, std::mt19937_64& rng, const RittSamplerConfig& cfg) {
  const std::size_t np = e.size() + static_cast<std::size_t>(cfg.extra_peripheral);
  if (np > dim) throw Error(Errc::InvalidArgument, "dimension too small for the peripheral set");
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<cplx> d;
  for (std::size_t i = 0; i < np; ++i) d.push_back(e[i % e.size()]);
  while (d.size() < dim) d.push_back(std::polar(cfg.inner_radius * std::sqrt(u(rng)), 2.0 * kPi * u(rng)));
  Matrix g = random_matrix(dim, rng);
  Matrix s = g * (cfg.coupling / norm2(g));
  s.add_identity(1.0);
  return s * Matrix::diagonal(d) * LuDecomposition(s).inverse();
}

PeripheralSet random_peripheral_set(std::size_t n, std::mt19937_64& rng, double min_sep) {
  std::uniform_real_distribution<double> u(0.0, 2.0 * kPi);
  for (int attempt = 0; attempt < 10000; ++attempt) {
    std::vector<cplx> pts;
    for (std::size_t i = 0; i < n; ++i) pts.push_back(std::polar(1.0, u(rng)));
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (std::abs(pts[i] - pts[j]) < min_sep) ok = false;
    if (ok) return PeripheralSet(std::move(pts));
  }
  throw Error(Errc::InvalidArgument, "cannot place points with the requested separation");
}

Matrix jordan_block(cplx lambda, std::size_t m) {
  Matrix j(m);
  for (std::size_t i = 0; i < m; ++i) {
    j(i, i) = lambda;
    if (i + 1 < m) j(i, i + 1) = 1.0;
  }
  return j;
}

}  // namespace rittlab
