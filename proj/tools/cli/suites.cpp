#include "suites.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "rittlab/calculus.hpp"
#include "rittlab/classify.hpp"
#include "rittlab/linalg.hpp"
#include "rittlab/samplers.hpp"

namespace rittlab::cli {

namespace {

cplx random_in_annulus(std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return std::polar(lo + (hi - lo) * u(rng), 2.0 * kPi * u(rng));
}

SuiteResult seifert(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> dim(2, 6), npts(1, 4), pw(1, 30);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> worst(5, 0.0), remainder(5, 0.0);
  std::vector<int> draws(5, 0);
  for (int i = 0; i < 1000; ++i) {
    const int n = npts(rng);
    const auto e = random_peripheral_set(n, rng);
    const Matrix t = random_matrix(dim(rng), rng);
    const cplx lambda = std::polar(2.0 * std::sqrt(u(rng)), 2.0 * kPi * u(rng));
    const auto q = seifert_Q(e);
    worst[n] = std::max(worst[n], seifert_residual(t, e, q, lambda, pw(rng)).relative());
    remainder[n] = std::max(remainder[n], q.remainder);
    ++draws[n];
  }
  SuiteResult r;
  r.pass = true;
  r.report = {{"suite", "seifert"}, {"tolerance", 1e-9}, {"rows", json::array()}};
  for (int n = 1; n <= 4; ++n) {
    const bool ok = worst[n] <= 1e-9;
    r.pass = r.pass && ok;
    r.report["rows"].push_back(
        {{"N", n}, {"draws", draws[n]}, {"max_relative_residual", worst[n]}, {"max_remainder", remainder[n]}, {"pass", ok}});
  }
  return r;
}

SuiteResult transfer(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> npts(1, 3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double w1 = 0.0, w3 = 0.0;
  for (int i = 0; i < 20; ++i) {
    const auto e = random_peripheral_set(npts(rng), rng);
    const Matrix t = random_ritt_e(4, e, rng);
    for (int k = 0; k < 50; ++k) {
      const std::size_t j = static_cast<std::size_t>(u(rng) * e.size()) % e.size();
      const cplx z = random_in_annulus(rng, 1.0 + 1e-3, 2.0);
      // lambda with xi (1 - lambda) in the same annulus keeps both resolvents regular.
      const cplx lambda = 1.0 - std::conj(e[j]) * random_in_annulus(rng, 1.0 + 1e-3, 2.0);
      const auto res = transfer_residuals(t, e[j], lambda, z);
      w1 = std::max(w1, res.transfer1);
      w3 = std::max(w3, res.transfer3);
    }
  }
  SuiteResult r;
  r.pass = w1 <= 1e-9 && w3 <= 1e-9;
  r.report = {{"suite", "transfer"}, {"tolerance", 1e-9}, {"samples", 1000},
              {"max_transfer1", w1}, {"max_transfer3", w3}, {"pass", r.pass}};
  return r;
}

SuiteResult fc(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> npts(1, 3);
  std::normal_distribution<double> g(0.0, 1.0);
  SuiteResult r;
  r.pass = true;
  r.report = {{"suite", "fc"}, {"tolerance", 1e-8}, {"rows", json::array()}};
  for (int i = 0; i < 10; ++i) {
    const auto e = random_peripheral_set(npts(rng), rng);
    const Matrix t = random_ritt_e(5, e, rng);
    std::vector<cplx> c(static_cast<std::size_t>(10 - static_cast<int>(e.size())) + 1);
    for (auto& x : c) x = {g(rng), g(rng)};
    const Polynomial phi = e.vanishing_polynomial() * Polynomial(std::move(c));
    const auto res = fc_contour(phi, t, e, 0.95);
    const Matrix exact = mat_poly(phi, t);
    const double rel = norm2(res.value - exact) / std::max(1.0, norm2(exact));
    const bool ok = rel <= 1e-8;
    r.pass = r.pass && ok;
    r.report["rows"].push_back({{"N", e.size()}, {"relative_error", rel}, {"u", res.u}, {"pass", ok}});
  }
  return r;
}

SuiteResult gamma(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> npts(1, 3);
  SuiteResult r;
  r.pass = true;
  r.report = {{"suite", "gamma"}, {"tolerance", 1e-7}, {"rows", json::array()}};
  for (int i = 0; i < 5; ++i) {
    const auto e = random_peripheral_set(npts(rng), rng);
    const Matrix t = random_ritt_e(4, e, rng, {.inner_radius = 0.5});
    double min_gap = 2.0 * kPi;
    for (std::size_t j = 0; j < e.size(); ++j) min_gap = std::min(min_gap, e.gap(j));
    // The contour needs every gap wider than pi - 2 asin(s).
    const double s = std::max(0.8, 0.5 * (1.0 + std::cos(0.5 * min_gap)));
    const int n0 = gamma_n_threshold(e, s);
    const std::vector<int> ns{n0, 2 * n0, std::max(50, n0)};
    for (const auto& row : gamma_n_reconstruction(t, e, s, ns).rows) {
      const bool ok = row.residual <= 1e-7;
      r.pass = r.pass && ok;
      r.report["rows"].push_back({{"N", e.size()}, {"n", row.n}, {"residual", row.residual},
                                  {"small_circle", row.small_circle}, {"pass", ok}});
    }
  }
  return r;
}

SuiteResult vonneumann(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const Matrix t = random_contraction(4, rng);
    worst = std::max(worst, calculus_constant(t, UnitDisc{}, 2.0, {.max_degree = 30, .seed = seed}).k_lower);
  }
  SuiteResult r;
  r.pass = worst <= 1.0 + 1e-6;
  r.report = {{"suite", "vonneumann"}, {"samples", 20}, {"max_k_lower", worst}, {"pass", r.pass}};
  return r;
}

}  // namespace

std::vector<std::string> suite_names() { return {"seifert", "transfer", "fc", "gamma", "vonneumann"}; }

SuiteResult run_suite(const std::string& name, std::uint64_t seed) {
  SuiteResult r;
  if (name == "seifert") r = seifert(seed);
  else if (name == "transfer") r = transfer(seed);
  else if (name == "fc") r = fc(seed);
  else if (name == "gamma") r = gamma(seed);
  else if (name == "vonneumann") r = vonneumann(seed);
  else throw InputError("unknown suite '" + name + "'");
  r.report["seed"] = seed;
  r.report["pass"] = r.pass;
  return r;
}

}  // namespace rittlab::cli
