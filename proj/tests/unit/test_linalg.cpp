#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "oracles.hpp"
#include "rittlab/error.hpp"
#include "rittlab/linalg.hpp"
#include "rittlab/polynomial.hpp"
#include "rittlab/samplers.hpp"

using namespace rittlab;

namespace {

double rel(const Matrix& a, const Matrix& b) { return norm2(a - b) / std::max(1.0, norm2(b)); }

}  // namespace

TEST_CASE("resolvent agrees with Gauss-Jordan inverse") {
  oracle::Gen g(11);
  for (int i = 0; i < 200; ++i) {
    const auto n = static_cast<std::size_t>(g.integer(1, 9));
    const Matrix t = g.matrix(n);
    const cplx z = g.in_annulus(1.5, 3.0);
    CHECK(rel(resolvent_matrix(t, z), oracle::resolvent(t, z)) < 1e-12);
  }
}

TEST_CASE("resolvent identity R(z) - R(w) = (w - z) R(z) R(w)") {
  oracle::Gen g(12);
  for (int i = 0; i < 100; ++i) {
    const Matrix t = g.matrix(6);
    const cplx z = g.in_annulus(1.2, 2.0), w = g.in_annulus(1.2, 2.0);
    const Matrix rz = resolvent_matrix(t, z), rw = resolvent_matrix(t, w);
    CHECK(rel(rz - rw, (w - z) * (rz * rw)) < 1e-12);
  }
}

TEST_CASE("resolvent at an eigenvalue throws SINGULAR") {
  const Matrix t = Matrix::diagonal(std::vector<cplx>{0.5, 0.25});
  try {
    (void)resolvent(t, 0.5);
    FAIL("expected SINGULAR");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::Singular);
  }
}

TEST_CASE("eigenvalues of 2x2 matrices match the quadratic formula") {
  oracle::Gen g(13);
  for (int i = 0; i < 200; ++i) {
    const Matrix t = g.matrix(2, 2.0);
    auto ev = eigenvalues(t);
    auto [a, b] = oracle::eig2(t);
    REQUIRE(ev.size() == 2);
    const double d1 = std::abs(ev[0] - a) + std::abs(ev[1] - b);
    const double d2 = std::abs(ev[0] - b) + std::abs(ev[1] - a);
    CHECK(std::min(d1, d2) < 1e-10);
  }
}

TEST_CASE("eigenvalues: trace and determinant are preserved") {
  oracle::Gen g(14);
  for (int i = 0; i < 50; ++i) {
    const auto n = static_cast<std::size_t>(g.integer(2, 12));
    const Matrix t = g.matrix(n);
    const auto ev = eigenvalues(t);
    cplx tr{}, sum{};
    for (std::size_t k = 0; k < n; ++k) tr += t(k, k);
    for (auto z : ev) sum += z;
    CHECK(std::abs(tr - sum) < 1e-10);
    // Each eigenvalue makes zI - T (numerically) singular.
    for (auto z : ev) CHECK(singular_values(t * -1.0 + Matrix::identity(n) * z).back() < 1e-9);
  }
}

TEST_CASE("spectrum recovers planted eigenvalues and flags Jordan blocks") {
  oracle::Gen g(15);
  const auto e = PeripheralSet::roots_of_unity(3);
  const Matrix t = g.ritt(6, e, 0.5);
  const auto sp = spectrum(t);
  for (auto xi : e.points()) {
    const bool found = std::any_of(sp.eigenvalues.begin(), sp.eigenvalues.end(),
                                   [&](const Eigenvalue& ev) { return std::abs(ev.value - xi) < 1e-8; });
    CHECK(found);
  }
  CHECK(sp.spectral_radius() == doctest::Approx(1.0).epsilon(1e-9));

  const auto jb = spectrum(jordan_block(1.0, 3));
  REQUIRE(jb.eigenvalues.size() == 1);
  CHECK(jb.eigenvalues[0].multiplicity == 3);
  CHECK_FALSE(jb.eigenvalues[0].semisimple);

  const auto id = spectrum(Matrix::identity(4));
  REQUIRE(id.eigenvalues.size() == 1);
  CHECK(id.eigenvalues[0].multiplicity == 4);
  CHECK(id.eigenvalues[0].semisimple);
}

TEST_CASE("op_norm at p = 2 matches power iteration") {
  oracle::Gen g(16);
  for (int i = 0; i < 50; ++i) {
    const Matrix t = g.matrix(static_cast<std::size_t>(g.integer(1, 8)));
    const auto r = op_norm(t, 2.0);
    CHECK(r.value == doctest::Approx(oracle::norm2(t)).epsilon(1e-9));
    CHECK(r.certificate == Certificate::Exact);
  }
}

TEST_CASE("op_norm is attained by its maximizer and dominates random ratios") {
  oracle::Gen g(17);
  for (double p : {1.5, 3.0, 4.0}) {
    for (int i = 0; i < 20; ++i) {
      const Matrix t = g.matrix(5);
      const auto r = op_norm(t, p);
      CHECK(oracle::vector_pnorm(r.maximizer, p) == doctest::Approx(1.0).epsilon(1e-9));
      CHECK(oracle::vector_pnorm(t.apply(r.maximizer), p) == doctest::Approx(r.value).epsilon(1e-9));
      for (int k = 0; k < 50; ++k) {
        const Vector x = g.vector(5);
        CHECK(oracle::vector_pnorm(t.apply(x), p) <= r.value * oracle::vector_pnorm(x, p) * (1.0 + 1e-12));
      }
    }
  }
}

TEST_CASE("op_norm duality ||T||_p = ||T^t||_q") {
  oracle::Gen g(18);
  for (int i = 0; i < 10; ++i) {
    const Matrix t = g.nonnegative(4);
    const double p = 3.0, q = p / (p - 1.0);
    CHECK(op_norm(t, p).value == doctest::Approx(op_norm(t.transpose(), q).value).epsilon(1e-6));
  }
}

TEST_CASE("op_norm rejects p outside (1, inf)") {
  const Matrix t = Matrix::identity(2);
  CHECK_THROWS_AS((void)op_norm(t, 1.0), Error);
  CHECK_THROWS_AS((void)op_norm(t, INFINITY), Error);
}

TEST_CASE("mat_exp matches a Taylor series") {
  oracle::Gen g(19);
  for (int i = 0; i < 50; ++i) {
    const Matrix a = g.matrix(static_cast<std::size_t>(g.integer(1, 8)), g.uniform(0.1, 6.0));
    CHECK(rel(mat_exp(a), oracle::expm(a)) < 1e-11);
  }
  // e^{A} e^{-A} = I
  const Matrix a = g.matrix(5, 3.0);
  CHECK(rel(mat_exp(a) * mat_exp(a * -1.0), Matrix::identity(5)) < 1e-11);
}

TEST_CASE("mat_poly matches explicit powers") {
  oracle::Gen g(20);
  for (int i = 0; i < 100; ++i) {
    std::vector<cplx> c(static_cast<std::size_t>(g.integer(0, 12)));
    for (auto& x : c) x = g.gaussian();
    const Polynomial p(c);
    const Matrix t = g.matrix(4);
    CHECK(rel(mat_poly(p, t), oracle::poly(p, t)) < 1e-12);
  }
}

TEST_CASE("power bounds of a unitary diagonal are exactly one") {
  const auto e = PeripheralSet::roots_of_unity(4);
  const Matrix t = Matrix::diagonal(e.points());
  const auto b = power_and_difference_bounds(t, e.points(), 2.0, 40);
  CHECK(b.c0 == doctest::Approx(1.0));
  for (double v : b.power_norms) CHECK(v == doctest::Approx(1.0));
  // prod(xi_j - T) vanishes on T itself.
  CHECK(b.c1 < 1e-12);
}

TEST_CASE("power bounds detect linear growth of a Jordan block") {
  const auto e = PeripheralSet::roots_of_unity(1);
  const auto b = power_and_difference_bounds(jordan_block(1.0, 2), e.points(), 2.0, 200);
  std::vector<double> n, y;
  for (int k = 100; k <= 200; ++k) n.push_back(k), y.push_back(b.power_norms[k]);
  CHECK(loglog_slope(n, y) == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("loglog_slope recovers exact power laws") {
  std::vector<double> x, y;
  for (int k = 1; k <= 20; ++k) x.push_back(k), y.push_back(3.0 * std::pow(k, -1.5));
  CHECK(loglog_slope(x, y) == doctest::Approx(-1.5).epsilon(1e-12));
}
