#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "oracles.hpp"
#include "rittlab/classify.hpp"
#include "rittlab/error.hpp"
#include "rittlab/linalg.hpp"
#include "rittlab/lp.hpp"

using namespace rittlab;

TEST_CASE("regular norm dominates the operator norm") {
  oracle::Gen g(71);
  for (double p : {1.5, 2.0, 3.0}) {
    for (int i = 0; i < 10; ++i) {
      const Matrix t = g.matrix(4);
      CHECK(regular_norm(t, p).value >= op_norm(t, p).value * (1.0 - 1e-9));
      const Matrix pos = g.nonnegative(4);
      CHECK(regular_norm(pos, p).value == doctest::Approx(op_norm(pos, p).value).epsilon(1e-9));
    }
  }
  // At p = 2 it is the spectral norm of the modulus.
  const Matrix t = g.matrix(5);
  CHECK(regular_norm(t, 2.0).value == doctest::Approx(oracle::norm2(t.modulus())).epsilon(1e-9));
  CHECK_THROWS_AS((void)regular_norm(t, 1.0), Error);
}

TEST_CASE("semigroup regular norms of a permutation") {
  const auto e = PeripheralSet::roots_of_unity(3);
  Matrix t(3);
  t(1, 0) = t(2, 1) = t(0, 2) = 1.0;
  const std::vector<double> grid{0.1, 1.0, 10.0};
  const auto rep = semigroup_regular_check(t, e, 2.0, grid);
  CHECK(rep.rows.size() == 9u);
  CHECK(rep.all_ok);
  for (const auto& row : rep.rows) {
    Matrix a = t * (-std::conj(e[row.j]));
    a.add_identity(1.0);
    const double ref = oracle::norm2(oracle::expm(a * -row.t).modulus());
    CHECK(row.regular_norm == doctest::Approx(ref).epsilon(1e-9));
    CHECK(row.majorant == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("semigroup check requires a contractively regular operator") {
  const Matrix t = Matrix::identity(2) * 1.1;
  try {
    (void)semigroup_regular_check(t, PeripheralSet::roots_of_unity(1), 2.0);
    FAIL("expected NOT_CONTRACTIVE");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NotContractive);
  }
}

TEST_CASE("cycle orders of unions of root-of-unity groups") {
  std::vector<cplx> pts;
  for (int k = 0; k < 4; ++k) pts.push_back(std::polar(1.0, kPi * k / 2.0));
  pts.push_back(std::polar(1.0, 2.0 * kPi / 3.0));
  pts.push_back(std::polar(1.0, -2.0 * kPi / 3.0));
  CHECK(cycle_orders_for(PeripheralSet(pts)) == std::vector<int>{3, 4});
  CHECK(cycle_orders_for(PeripheralSet::roots_of_unity(6)) == std::vector<int>{6});
  CHECK(cycle_orders_for(PeripheralSet::roots_of_unity(1)) == std::vector<int>{1});
  CHECK_THROWS_AS((void)cycle_orders_for(PeripheralSet({cplx(0.0, 1.0)})), Error);
  CHECK_THROWS_AS((void)cycle_orders_for(PeripheralSet({std::polar(1.0, 1.0)})), Error);

  const std::vector<int> orders{2, 3};
  const auto e = peripheral_set_for(orders);
  CHECK(e.size() == 4u);
  CHECK(cycle_orders_for(e) == orders);
}

TEST_CASE("positive ensembles are certified and reproducible") {
  LpEnsembleConfig cfg{.dim = 7, .p = 3.0, .cycle_orders = {2, 3}, .gap = 0.2, .count = 5, .seed = 9};
  const auto a = ensemble_positive_ritt(cfg);
  const auto b = ensemble_positive_ritt(cfg);
  REQUIRE(a.size() == 5u);
  const auto e = peripheral_set_for(cfg.cycle_orders);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].t == b[i].t);
    CHECK(a[i].contractively_regular);
    CHECK(a[i].regular_norm <= 1.0 + 1e-10);
    for (auto x : a[i].t.data()) {
      CHECK(x.imag() == 0.0);
      CHECK(x.real() >= 0.0);
    }
    CHECK(is_ritt_e_fd(a[i].t, e).ritt);
    // The non-peripheral spectrum keeps its distance from the circle.
    for (const auto& ev : spectrum(a[i].t).eigenvalues)
      if (!e.nearest_within(ev.value, 1e-6)) CHECK(std::abs(ev.value) <= 1.0 - cfg.gap + 1e-9);
  }
  cfg.dim = 4;
  CHECK_THROWS_AS((void)ensemble_positive_ritt(cfg), Error);
}

TEST_CASE("a small positive experiment is finite and stable") {
  LpEnsembleConfig cfg{.dim = 5, .p = 1.5, .cycle_orders = {2}, .gap = 0.2, .count = 2, .seed = 3};
  const std::vector<double> s{0.5, 0.9};
  const auto rep = positive_ensemble_experiment(cfg, s, 20, {.random_per_degree = 2, .peak_directions = 4});
  REQUIRE(rep.samples.size() == 2u);
  CHECK(rep.all_finite);
  CHECK(rep.all_semigroup_ok);
  for (const auto& smp : rep.samples) {
    CHECK(smp.polygon_vertices >= 3u);
    CHECK(smp.polygon.k_lower >= 1.0 - 1e-9);
    for (const auto& row : smp.stolz) CHECK(row.s > smp.r_star);
  }
}
