#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "oracles.hpp"
#include "rittlab/calculus.hpp"
#include "rittlab/classify.hpp"
#include "rittlab/error.hpp"
#include "rittlab/linalg.hpp"
#include "rittlab/polygon.hpp"

using namespace rittlab;

namespace {

double rel(const Matrix& a, const Matrix& b) { return norm2(a - b) / std::max(1.0, norm2(b)); }

}  // namespace

TEST_CASE("contour calculus reproduces polynomials vanishing on E") {
  oracle::Gen g(31);
  for (int i = 0; i < 12; ++i) {
    const auto e = g.peripheral(static_cast<std::size_t>(g.integer(1, 3)));
    const Matrix t = g.ritt(5, e, 0.7);
    const auto phi = g.h0_poly(e, 10);
    const auto res = fc_contour(phi, t, e, 0.95);
    CHECK(res.converged);
    CHECK(rel(res.value, oracle::poly(phi, t)) <= 1e-8);
    CHECK(res.u > ritt_type(t, e));
    CHECK(res.u < 0.95);
  }
}

TEST_CASE("contour calculus is multiplicative") {
  oracle::Gen g(32);
  for (int i = 0; i < 6; ++i) {
    const auto e = g.peripheral(2);
    const Matrix t = g.ritt(4, e, 0.6);
    const auto phi = g.h0_poly(e, 5), psi = g.h0_poly(e, 5);
    const std::vector<Analytic> fs{phi, psi, phi * psi};
    const auto r = fc_contour_many(fs, t, e, 0.9);
    CHECK(rel(r[0].value * r[1].value, r[2].value) <= 1e-8);
  }
}

TEST_CASE("black-box functions go through the same contour") {
  const auto e = PeripheralSet::roots_of_unity(1);
  oracle::Gen g(33);
  const Matrix t = g.ritt(4, e, 0.5);
  // (1 - z) e^z vanishes at 1.
  const Analytic f(std::function<cplx(cplx)>([](cplx z) { return (1.0 - z) * std::exp(z); }));
  Matrix a = t * -1.0;
  a.add_identity(1.0);
  const Matrix ref = a * oracle::expm(t);
  const auto res = fc_contour(f, t, e, 0.9);
  CHECK(rel(res.value, ref) <= 1e-8);
  CHECK(res.membership_sampled);
}

TEST_CASE("functions that do not vanish on E are rejected") {
  const auto e = PeripheralSet::roots_of_unity(2);
  const Polynomial one = Polynomial::constant(1.0);
  try {
    check_h0(one, e);
    FAIL("expected NOT_H0");
  } catch (const Error& err) {
    CHECK(err.code() == Errc::NotH0);
  }
  CHECK_NOTHROW(check_h0(e.vanishing_polynomial(), e));
}

TEST_CASE("contour radius keeps clear of the spectrum") {
  const auto e = PeripheralSet::roots_of_unity(1);
  QuadConfig cfg;
  const std::vector<cplx> eigs{1.0, 0.5, cplx(0.0, 0.7)};
  const double u = choose_contour_radius(eigs, e, 0.7, 0.9, cfg);
  CHECK(u > 0.7);
  CHECK(u < 0.9);
  const auto c = boundary_contour(build_stolz(e, u));
  for (auto z : eigs)
    if (std::abs(z - 1.0) > 1e-9) CHECK(contour_distance(c, z) >= cfg.min_spectral_clearance);
}

TEST_CASE("Lagrange split interpolates on E") {
  oracle::Gen g(34);
  for (int i = 0; i < 20; ++i) {
    const auto e = g.peripheral(static_cast<std::size_t>(g.integer(1, 5)), 0.4);
    std::vector<cplx> c(7);
    for (auto& x : c) x = g.gaussian();
    const Polynomial psi(c);
    const auto s = lagrange_split(psi, e);
    for (std::size_t j = 0; j < e.size(); ++j) {
      for (std::size_t k = 0; k < e.size(); ++k)
        CHECK(std::abs(s.basis[j](e[k]) - (j == k ? 1.0 : 0.0)) < 1e-10);
      CHECK(std::abs(s.psi0(e[j]) - psi(e[j])) < 1e-10);
      CHECK(std::abs(s.psi1(e[j])) < 1e-10);
    }
    const cplx z = g.in_disc(1.0);
    CHECK(std::abs(s.psi0(z) + s.psi1(z) - psi(z)) < 1e-10);
  }
}

TEST_CASE("Seifert quotient divides the vanishing polynomial difference") {
  oracle::Gen g(35);
  for (int i = 0; i < 100; ++i) {
    const auto e = g.peripheral(static_cast<std::size_t>(g.integer(1, 4)), 0.2);
    const auto q = seifert_Q(e);
    const auto p = e.vanishing_polynomial();
    const cplx l = g.in_disc(2.0), z = g.in_disc(2.0);
    CHECK(std::abs((l - z) * q(l, z) - (p(l) - p(z))) < 1e-12 * std::max(1.0, std::abs(p(l)) + std::abs(p(z))));
    CHECK(q.remainder < 1e-14);
    const Matrix t = g.matrix(4);
    CHECK(seifert_residual(t, e, q, l, g.integer(1, 30)).relative() <= 1e-9);
    // Q(lambda, T) agrees with the scalar version on diagonal matrices.
    const std::vector<cplx> d{g.in_disc(1.0), g.in_disc(1.0)};
    const Matrix qt = q.at(l, Matrix::diagonal(d));
    CHECK(std::abs(qt(0, 0) - q(l, d[0])) < 1e-12);
    CHECK(std::abs(qt(1, 1) - q(l, d[1])) < 1e-12);
  }
}

TEST_CASE("Cauchy split sums to phi inside and to zero outside") {
  const auto e = PeripheralSet::roots_of_unity(3);
  oracle::Gen g(36);
  const Matrix t = g.ritt(6, e, 0.6);
  const auto poly = certified_polygon(t, e);
  const auto phi = g.h0_poly(e, 8);
  std::vector<cplx> z;
  while (z.size() < 60) {
    const cplx w = g.in_disc(1.3);
    if (poly.delta.boundary_distance(w) > 1e-2) z.push_back(w);
  }
  const auto parts = cauchy_split(phi, poly.delta, poly.split_vertices, z);
  for (std::size_t k = 0; k < z.size(); ++k) {
    cplx sum{};
    for (const auto& path : parts) sum += path[k];
    const cplx expect = poly.delta.contains(z[k]) ? phi(z[k]) : cplx{};
    CHECK(std::abs(sum - expect) <= 1e-8);
  }
  const std::vector<cplx> on_path{poly.delta.vertices[0]};
  CHECK_THROWS_AS((void)cauchy_split(phi, poly.delta, poly.split_vertices, on_path), Error);
}

TEST_CASE("Dunford integral over a polygon matches explicit powers") {
  oracle::Gen g(37);
  std::vector<cplx> hex;
  for (int k = 0; k < 6; ++k) hex.push_back(std::polar(0.95, kPi * k / 3.0));
  const ConvexPolygon delta(hex);
  for (int i = 0; i < 5; ++i) {
    const Matrix t = g.ritt(4, PeripheralSet{}, 0.6);
    std::vector<cplx> c(8);
    for (auto& x : c) x = g.gaussian();
    const Polynomial p(c);
    CHECK(rel(fc_dunford_polygon(p, t, delta).value, oracle::poly(p, t)) < 1e-9);
  }
  const Matrix far = Matrix::diagonal(std::vector<cplx>{0.99, 0.0});
  CHECK_THROWS_AS((void)fc_dunford_polygon(Polynomial::monomial(1), far, delta), Error);
}

TEST_CASE("boundary sup of monomials") {
  CHECK(boundary_sup(Polynomial::monomial(3), UnitDisc{}) == doctest::Approx(1.0).epsilon(1e-12));
  const auto e = PeripheralSet::roots_of_unity(2);
  // z^2 peaks at the points of E on the closed Stolz domain.
  CHECK(boundary_sup(Polynomial::monomial(2), build_stolz(e, 0.5)) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("calculus constants respect von Neumann for contractions") {
  oracle::Gen g(38);
  for (int i = 0; i < 5; ++i) {
    Matrix t = g.matrix(4);
    t *= 1.0 / oracle::norm2(t);
    const auto k = calculus_constant(t, UnitDisc{}, 2.0, {.max_degree = 20});
    CHECK(k.k_lower <= 1.0 + 1e-6);
    CHECK(k.k_lower >= 0.5);
    CHECK(std::is_sorted(k.k_by_degree.begin(), k.k_by_degree.end()));
    CHECK(k.degrees.back() == 20);
  }
}

TEST_CASE("calculus constants grow for a Jordan block at the boundary") {
  const auto e = PeripheralSet::roots_of_unity(1);
  Matrix t(2);
  t(0, 0) = t(1, 1) = 0.99;
  t(0, 1) = 1.0;
  const auto k = calculus_constant(t, UnitDisc{}, 2.0, {.max_degree = 30});
  CHECK(k.k_lower > 2.0);
}

TEST_CASE("rational functions of matrices") {
  oracle::Gen g(39);
  const auto rs = random_rationals(1.0, 20, 5);
  for (const auto& r : rs) {
    for (auto p : r.poles) CHECK(std::abs(std::arg(p)) > 1.0);
    const Matrix a = g.matrix(3, 0.3);
    Matrix ref = Matrix::identity(3) * r.c;
    for (std::size_t k = 0; k < r.poles.size(); ++k) {
      Matrix m = a;
      m.add_identity(-r.poles[k]);
      ref += oracle::inverse(m) * r.residues[k];
    }
    CHECK(rel(r.at(a), ref) < 1e-11);
    const cplx z = g.gaussian();
    CHECK(std::abs(r.compose_affine(0.3, 0.5)(z) - r(0.3 + 0.5 * z)) < 1e-10 * std::max(1.0, std::abs(r(0.3 + 0.5 * z))));
  }
  const Rational inv{0.0, {1.0}, {-1.0}};
  CHECK(sector_sup(inv, 0.5) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("rho-shift check rejects poles inside the sector") {
  const Rational bad{0.0, {1.0}, {cplx(1.0, 0.1)}};
  const std::vector<Rational> gs{bad};
  const std::vector<double> rho{0.5};
  CHECK_THROWS_AS((void)rho_shift_check(Matrix::identity(2), 1.0, gs, rho), Error);
}

TEST_CASE("rho-shift ratios stay under the reference constant for a normal matrix") {
  const std::vector<cplx> d{0.2, cplx(0.5, 0.3), cplx(1.0, -0.4)};
  const Matrix a = Matrix::diagonal(d);
  const auto gs = random_rationals(1.2, 10, 3);
  const std::vector<double> rho{0.1, 0.5, 0.9};
  const auto rep = rho_shift_check(a, 1.2, gs, rho);
  CHECK(rep.bounded);
  CHECK(rep.composition_residual < 1e-10);
  CHECK(rep.max_ratio <= 1.0 + 1e-6);
}
