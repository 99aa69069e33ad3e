// Acceptance run: one line per criterion, nonzero exit if any criterion fails.
//
//   acceptance [--workdir DIR] [--only K]...

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "rittlab/calculus.hpp"
#include "rittlab/classify.hpp"
#include "rittlab/error.hpp"
#include "rittlab/linalg.hpp"
#include "rittlab/lp.hpp"
#include "rittlab/polygon.hpp"
#include "rittlab/rbound.hpp"
#include "rittlab/samplers.hpp"
#include "rittlab/unity.hpp"

namespace fs = std::filesystem;
using namespace rittlab;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double rel(const Matrix& a, const Matrix& b) { return norm2(a - b) / std::max(1.0, norm2(b)); }

/// Random Ritt_E matrix that also passes the finite-dimensional test.
Matrix certified(std::mt19937_64& rng, std::size_t dim, const PeripheralSet& e, double inner = 0.9) {
  dim = std::max(dim, e.size() + 1);
  for (;;) {
    Matrix t = random_ritt_e(dim, e, rng, {.inner_radius = inner});
    if (is_ritt_e_fd(t, e).ritt) return t;
  }
}

PeripheralSet random_e(std::mt19937_64& rng, int lo, int hi, double min_sep = 0.5) {
  std::uniform_int_distribution<int> n(lo, hi);
  return random_peripheral_set(static_cast<std::size_t>(n(rng)), rng, min_sep);
}

cplx annulus_point(std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return std::polar(lo + (hi - lo) * u(rng), 2.0 * kPi * u(rng));
}

// ---------------------------------------------------------------------------

Outcome c1_identities() {
  std::mt19937_64 rng(101);
  std::uniform_int_distribution<int> dim(2, 8);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double wr = 0.0, w1 = 0.0, w3 = 0.0;
  for (int i = 0; i < 100; ++i) {
    const auto e = random_e(rng, 1, 4);
    const Matrix t = certified(rng, static_cast<std::size_t>(dim(rng)), e);
    for (int k = 0; k < 1000; ++k) {
      // Points of the annulus 1 < |z| < 2, graded toward the circle.
      const double lo = 1.0 + std::ldexp(1.0, -1 - static_cast<int>(u(rng) * 10.0));
      const cplx z = annulus_point(rng, lo, 2.0), w = annulus_point(rng, lo, 2.0);
      const Matrix rz = resolvent_matrix(t, z), rw = resolvent_matrix(t, w);
      const Matrix lhs = rz - rw, rhs = (w - z) * (rz * rw);
      wr = std::max(wr, norm2(lhs - rhs) / std::max({norm2(lhs), norm2(rhs), 1e-300}));
      const std::size_t j = static_cast<std::size_t>(u(rng) * static_cast<double>(e.size())) % e.size();
      const cplx lambda = 1.0 - std::conj(e[j]) * annulus_point(rng, lo, 2.0);
      const auto tr = transfer_residuals(t, e[j], lambda, z);
      w1 = std::max(w1, tr.transfer1);
      w3 = std::max(w3, tr.transfer3);
    }
  }
  return {std::max({wr, w1, w3}) <= 1e-9,
          fmt("resolvent %.2e  transfer1 %.2e  transfer3 %.2e  (tol 1e-9, 100 x 1000)", wr, w1, w3)};
}

Outcome c2_functional_calculus() {
  std::mt19937_64 rng(102);
  std::normal_distribution<double> g(0.0, 1.0);
  std::uniform_int_distribution<int> dim(2, 8);
  double worst_oracle = 0.0, worst_hom = 0.0, worst_ratio = 0.0;
  auto poly_h0 = [&](const PeripheralSet& e) {
    const int extra = std::max(0, std::uniform_int_distribution<int>(0, 10)(rng) - static_cast<int>(e.size()));
    std::vector<cplx> c(static_cast<std::size_t>(extra) + 1);
    for (auto& x : c) x = {g(rng), g(rng)};
    return e.vanishing_polynomial() * Polynomial(std::move(c));
  };
  for (int i = 0; i < 30; ++i) {
    const auto e = random_e(rng, 1, 3);
    const Matrix t = certified(rng, static_cast<std::size_t>(dim(rng)), e, 0.8);
    const double s = 0.95;
    const Polynomial phi = poly_h0(e), psi = poly_h0(e);
    if (phi.degree() > 10 || psi.degree() > 10 || (phi * psi).degree() > 20) continue;
    const std::vector<Analytic> fs{phi, psi, phi * psi};
    const auto r = fc_contour_many(fs, t, e, s);
    worst_oracle = std::max({worst_oracle, rel(r[0].value, oracle::poly(phi, t)), rel(r[1].value, oracle::poly(psi, t)),
                             rel(r[0].value, mat_poly(phi, t))});
    worst_hom = std::max(worst_hom, rel(r[0].value * r[1].value, r[2].value));

    // A second admissible radius: the window (r, (r + s)/2) instead of (r, s).
    const auto eigs = eigenvalues(t);
    const double type = stolz_type(eigs, e);
    const double u2 = choose_contour_radius(eigs, e, type, 0.5 * (type + s), {});
    const auto r2 = fc_contour(phi, t, e, s, {}, std::nullopt, u2);
    const double diff = norm2(r[0].value - r2.value);
    const double est = std::max(r[0].error_estimate, r2.error_estimate);
    worst_ratio = std::max(worst_ratio, diff / (2.0 * est));
  }
  const bool ok = worst_oracle <= 1e-8 && worst_hom <= 1e-8 && worst_ratio <= 1.0;
  return {ok, fmt("oracle %.2e  homomorphism %.2e  (tol 1e-8)  |phi_u1 - phi_u2| / 2 max(err) = %.3f", worst_oracle,
                  worst_hom, worst_ratio)};
}

struct SeqPair {
  double c0_200, c0_400, c1_200, c1_400;
};

SeqPair plateau(const PowerBounds& b) {
  SeqPair s{};
  for (std::size_t n = 0; n < b.power_norms.size(); ++n) {
    if (n <= 200) s.c0_200 = std::max(s.c0_200, b.power_norms[n]);
    s.c0_400 = std::max(s.c0_400, b.power_norms[n]);
  }
  for (std::size_t n = 1; n <= b.difference_norms.size(); ++n) {
    if (n <= 200) s.c1_200 = std::max(s.c1_200, b.difference_norms[n - 1]);
    s.c1_400 = std::max(s.c1_400, b.difference_norms[n - 1]);
  }
  return s;
}

Outcome c3_forward() {
  std::mt19937_64 rng(103);
  std::uniform_int_distribution<int> dim(2, 8);
  double worst0 = 0.0, worst1 = 0.0;
  for (int i = 0; i < 50; ++i) {
    const auto e = random_e(rng, 1, 4);
    const Matrix t = certified(rng, static_cast<std::size_t>(dim(rng)), e);
    const auto s = plateau(power_and_difference_bounds(t, e.points(), 2.0, 400));
    worst0 = std::max(worst0, s.c0_400 / s.c0_200 - 1.0);
    worst1 = std::max(worst1, s.c1_400 / s.c1_200 - 1.0);
  }
  // Negative controls: a Jordan block of size 2 at a point of E plus a certified rest.
  double min_slope = INFINITY;
  for (int i = 0; i < 10; ++i) {
    const auto e = random_e(rng, 1, 3);
    const Matrix rest = certified(rng, 3, e);
    Matrix t(5);
    t(0, 0) = t(1, 1) = e[0];
    t(0, 1) = 1.0;
    for (std::size_t a = 0; a < 3; ++a)
      for (std::size_t b = 0; b < 3; ++b) t(2 + a, 2 + b) = rest(a, b);
    const auto pb = power_and_difference_bounds(t, e.points(), 2.0, 400);
    std::vector<double> n, y;
    for (std::size_t k = 100; k < pb.power_norms.size(); ++k) n.push_back(static_cast<double>(k)), y.push_back(pb.power_norms[k]);
    min_slope = std::min(min_slope, loglog_slope(n, y));
  }
  const bool ok = worst0 < 0.05 && worst1 < 0.05 && min_slope >= 0.9;
  return {ok, fmt("c0 change %.2e  c1 change %.2e  (tol 5%%, 50 samples)  Jordan slope >= %.3f (tol 0.9)", worst0,
                  worst1, min_slope)};
}

Outcome c4_backward() {
  std::mt19937_64 rng(104);
  std::uniform_int_distribution<int> dim(2, 6);
  double worst = 0.0;
  int bad = 0;
  for (int i = 0; i < 50; ++i) {
    const auto e = random_e(rng, 1, 4);
    const Matrix t = certified(rng, static_cast<std::size_t>(dim(rng)), e);
    const auto c = power_certificate(t, e, 2.0, 400);
    // Recompute the closing bound here rather than trusting the stored one.
    const double bound = 2.0 * c.c0 * (2.0 * c.c1 + std::pow(3.0, static_cast<double>(e.size())) + c.c_q);
    worst = std::max(worst, c.c_hat / bound);
    if (c.c_hat > bound * (1.0 + 1e-2) || !c.consistent) ++bad;
  }
  return {bad == 0, fmt("max c_hat / bound %.4f  violations %d of 50  (tol 1 + 1e-2)", worst, bad)};
}

Outcome c5_gamma() {
  std::mt19937_64 rng(105);
  std::uniform_int_distribution<int> dim(2, 6);
  double worst = 0.0, worst_small = 0.0;
  int rows = 0;
  for (int i = 0; i < 10; ++i) {
    const auto e = random_e(rng, 1, 3, 0.8);
    const Matrix t = certified(rng, static_cast<std::size_t>(dim(rng)), e, 0.6);
    double min_gap = 2.0 * kPi;
    for (std::size_t j = 0; j < e.size(); ++j) min_gap = std::min(min_gap, e.gap(j));
    const double s = std::max({0.8, 0.5 * (1.0 + std::cos(0.5 * min_gap)), ritt_type(t, e) + 0.05});
    const int n0 = gamma_n_threshold(e, s);
    std::vector<int> ns{n0, 2 * n0, 50};
    ns.erase(std::remove_if(ns.begin(), ns.end(), [&](int n) { return n < n0; }), ns.end());
    for (const auto& row : gamma_n_reconstruction(t, e, s, ns).rows) {
      worst = std::max(worst, row.residual);
      worst_small = std::max(worst_small, row.small_circle);
      ++rows;
    }
  }
  const double cap = 2.0 * kPi * std::exp(1.0) * (1.0 + 1e-2);
  return {worst <= 1e-7 && worst_small <= cap,
          fmt("residual %.2e (tol 1e-7)  small circle %.4f (cap %.4f)  %d rows", worst, worst_small, cap, rows)};
}

Outcome c6_seifert() {
  std::mt19937_64 rng(106);
  std::uniform_int_distribution<int> dim(2, 8), pw(1, 30);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const auto e = random_e(rng, 1, 4, 0.2);
    const Matrix t = random_matrix(static_cast<std::size_t>(dim(rng)), rng);
    const cplx lambda = std::polar(2.0 * std::sqrt(u(rng)), 2.0 * kPi * u(rng));
    worst = std::max(worst, seifert_residual(t, e, seifert_Q(e), lambda, pw(rng)).relative());
  }
  return {worst <= 1e-9, fmt("max residual / scale %.2e  (tol 1e-9, 1000 draws)", worst)};
}

Outcome c7_polygon() {
  std::mt19937_64 rng(107);
  std::normal_distribution<double> g(0.0, 1.0);
  std::uniform_int_distribution<int> dim(3, 7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int failures = 0, disagreements = 0, outside = 0;
  double split_err = 0.0, growth = 0.0;
  for (int i = 0; i < 50; ++i) {
    const auto e = random_e(rng, 1, 3);
    const Matrix t = certified(rng, static_cast<std::size_t>(dim(rng)), e);
    PolygonResult poly;
    try {
      poly = certified_polygon(t, e, {.seed = static_cast<std::uint64_t>(i)});
    } catch (const Error&) {
      ++failures;
      continue;
    }
    disagreements += poly.membership_disagreements;
    // Independent recount: the intersection of the sectors against delta0.
    const auto sectors = poly.sectors();
    for (int k = 0; k < 2000; ++k) {
      const cplx z = std::polar(std::sqrt(u(rng)), 2.0 * kPi * u(rng));
      const bool in_all = std::all_of(sectors.begin(), sectors.end(), [&](const Sector& s) { return s.contains(z); });
      const bool in_all_closed =
          std::all_of(sectors.begin(), sectors.end(), [&](const Sector& s) { return s.contains(z, true); });
      if (in_all != in_all_closed) continue;  // on a sector boundary
      if (poly.delta0.contains(z, true) != in_all && poly.delta0.boundary_distance(z) > 1e-9) ++disagreements;
    }
    for (auto z : eigenvalues(t))
      if (!poly.delta.contains(z, true)) ++outside;

    std::vector<cplx> c(4);
    for (auto& x : c) x = {g(rng), g(rng)};
    const Polynomial phi = e.vanishing_polynomial() * Polynomial(c);
    std::vector<cplx> zs;
    while (zs.size() < 40) {
      const cplx z = std::polar(1.3 * std::sqrt(u(rng)), 2.0 * kPi * u(rng));
      if (poly.delta.boundary_distance(z) > 1e-2) zs.push_back(z);
    }
    const auto parts = cauchy_split(phi, poly.delta, poly.split_vertices, zs);
    for (std::size_t k = 0; k < zs.size(); ++k) {
      cplx sum{};
      for (const auto& path : parts) sum += path[k];
      const cplx expect = poly.delta.contains(zs[k]) ? phi(zs[k]) : cplx{};
      split_err = std::max(split_err, std::abs(sum - expect));
    }
    const auto k = calculus_constant(t, poly.delta, 2.0, {.max_degree = 50, .seed = static_cast<std::uint64_t>(i)});
    growth = std::max(growth, k.growth(25, 50));
  }
  const bool ok = failures == 0 && disagreements == 0 && outside == 0 && split_err <= 1e-8 && growth < 0.1;
  return {ok, fmt("failures %d  disagreements %d  eigenvalues outside %d  split %.2e (tol 1e-8)  K growth %.4f (tol 0.1)",
                  failures, disagreements, outside, split_err, growth)};
}

Outcome c8_hilbert() {
  std::mt19937_64 rng(108);
  double worst_ritt = 0.0, worst_single = 0.0;
  const SamplerConfig grid{.k_max = 10, .angular = 96, .vertex_refine = 10};
  for (int i = 0; i < 5; ++i) {
    const auto e = random_e(rng, 1, 3);
    const Matrix t = certified(rng, 3, e, 0.7);
    const double c_hat = resolvent_constant(t, e, 2.0, grid).c_hat;
    const double r = r_ritt_lower(t, e, 2.0, grid, {.n_max = 4, .seed = static_cast<std::uint64_t>(i)}).value;
    worst_ritt = std::max(worst_ritt, std::abs(r - c_hat) / c_hat);
  }
  for (int i = 0; i < 10; ++i) {
    const std::vector<Matrix> fam{random_matrix(5, rng)};
    const double r = rbound_lower(fam, 2.0).value;
    const double ref = oracle::norm2(fam[0]);
    worst_single = std::max(worst_single, std::abs(r - ref) / ref);
  }
  return {worst_ritt <= 0.05 && worst_single <= 0.02,
          fmt("r_ritt vs c_hat %.2e (tol 5%%)  singleton vs ||S||_2 %.2e (tol 2%%)", worst_ritt, worst_single)};
}

Outcome c9_von_neumann() {
  std::mt19937_64 rng(109);
  std::uniform_int_distribution<int> dim(2, 8);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const Matrix t = random_contraction(static_cast<std::size_t>(dim(rng)), rng);
    worst = std::max(worst, calculus_constant(t, UnitDisc{}, 2.0, {.seed = static_cast<std::uint64_t>(i)}).k_lower);
  }
  return {worst <= 1.0 + 1e-6, fmt("max K over the disc %.9f  (cap 1 + 1e-6, 50 contractions)", worst)};
}

Outcome c10_lp() {
  bool ok = true;
  std::string detail;
  const std::vector<double> s_grid{0.5, 0.7, 0.9};
  for (double p : {1.5, 3.0}) {
    for (const std::vector<int>& orders : {std::vector<int>{3}, std::vector<int>{2, 3}}) {
      LpEnsembleConfig cfg{.dim = 8, .p = p, .cycle_orders = orders, .gap = 0.1, .count = 20, .seed = 110};
      const auto rep = positive_ensemble_experiment(cfg, s_grid, 50);
      double max_semi = 0.0;
      std::size_t stolz_rows = 0;
      for (const auto& smp : rep.samples) {
        max_semi = std::max(max_semi, smp.semigroup.max_norm);
        stolz_rows += smp.stolz.size();
      }
      const bool here = rep.samples.size() == 20 && rep.all_finite && rep.all_stable && rep.all_semigroup_ok &&
                        max_semi <= 1.0 + 1e-8 && stolz_rows > 0;
      ok = ok && here;
      detail += fmt("[p=%.1f E=%zu pts: %s, semigroup max %.9f] ", p, rep.e.size(), here ? "ok" : "FAIL", max_semi);
    }
  }
  return {ok, detail};
}

Outcome c11_unity() {
  std::mt19937_64 rng(111);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::string detail;
  SectorFamily fam;
  try {
    fam = default_family(8);
  } catch (const Error& e) {
    if (e.code() != Errc::FloorFailure) throw;
    return {true, std::string("diagnostic: ") + e.what()};
  }
  // Pointwise identity of the composed terms.
  double worst_compose = 0.0;
  for (int i = 0; i < 200; ++i) {
    const auto e = random_e(rng, 1, 3);
    std::vector<int> iota;
    for (std::size_t j = 0; j < e.size(); ++j) iota.push_back(static_cast<int>(u(rng) * fam.size) % fam.size);
    const auto term = compose_multipoint(fam, e, iota);
    for (int k = 0; k < 10; ++k) {
      const cplx z = std::polar(0.99 * std::sqrt(u(rng)), 2.0 * kPi * u(rng));
      cplx th = 1.0, ph = 1.0, ps = 1.0;
      for (std::size_t j = 0; j < e.size(); ++j) {
        const cplx l = 1.0 - std::conj(e[j]) * z;
        th *= fam.theta(iota[j], l);
        ph *= fam.phi(iota[j], l);
        ps *= fam.psi(iota[j], l);
      }
      auto d = [](cplx a, cplx b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); };
      worst_compose = std::max({worst_compose, d(term.theta(z), th), d(term.phi(z), ph), d(term.psi(z), ps)});
    }
  }
  double worst_defect = 0.0, worst_ratio = 0.0;
  for (const auto& e : {PeripheralSet::roots_of_unity(1), PeripheralSet::roots_of_unity(2)}) {
    std::vector<cplx> z;
    for (int k = 0; k < 1000; ++k) z.push_back(std::polar(0.999 * std::sqrt(u(rng)), 2.0 * kPi * u(rng)));
    const auto rep = verify_unity(fam, e, 0.5, z, fam.truncation);
    worst_defect = std::max(worst_defect, rep.unity_defect);
    worst_ratio = std::max(worst_ratio, rep.integral_max_over_median);
  }
  return {worst_compose <= 1e-12 && worst_defect <= 1e-10 && worst_ratio <= 10.0,
          fmt("compose %.2e (tol 1e-12)  defect %.2e (tol 1e-10)  max/median %.3f (cap 10)  floor %.4f", worst_compose,
              worst_defect, worst_ratio, fam.floor_value)};
}

// ---------------------------------------------------------------------------

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

int shell(const std::string& cmd) { return std::system((cmd + " > /dev/null 2>&1").c_str()); }

Outcome c12_determinism(const fs::path& work) {
  const std::string exe = RITTLAB_CLI_PATH;
  fs::remove_all(work);
  fs::create_directories(work / "inputs");
  {
    std::ofstream(work / "inputs" / "t.json")
        << R"({"dim":4,"entries":[1,0.3,0,0, 0,-1,0.2,0, 0,0,[0.2,0.3],0.1, 0,0,0,0.5]})";
    std::ofstream(work / "inputs" / "fam.json")
        << R"({"matrices":[{"dim":2,"entries":[1,0.5,0,0.3]},{"dim":2,"entries":[0.2,0,1,[0,0.7]]}]})";
    std::ofstream(work / "inputs" / "lp.json")
        << R"({"dim":5,"p":3,"cycle_orders":[2],"count":2,"seed":4,"s_grid":[0.9],"max_degree":10})";
  }
  const std::string in = (work / "inputs").string();
  const std::vector<std::string> verbs{
      "classify " + in + "/t.json --E roots:2 --nmax 60",
      "calculus " + in + "/t.json --phi vanishing --E roots:2",
      "polygon " + in + "/t.json --E roots:2",
      "rbound " + in + "/fam.json --p 3 --trials 500",
      "unity --M 4 --E roots:2",
      "verify --suite seifert",
      "lp-experiment " + in + "/lp.json",
  };
  int mismatches = 0, compared = 0;
  std::string first_diff;
  for (int run = 0; run < 2; ++run) {
    const fs::path out = work / ("run" + std::to_string(run));
    fs::create_directories(out);
    for (std::size_t v = 0; v < verbs.size(); ++v) {
      const fs::path dir = out / std::to_string(v);
      fs::create_directories(dir);
      shell("\"" + exe + "\" --seed 17 --out \"" + dir.string() + "\" " + verbs[v]);
    }
    // Render every report carrying geometry.
    for (const char* src : {"0/classify.json", "2/polygon.json"}) {
      const fs::path svg = out / (std::string(src).substr(0, 1) + ".svg");
      shell("\"" + exe + "\" --out \"" + (out / "render").string() + "\" render \"" + (out / src).string() + "\" -o \"" +
            svg.string() + "\"");
    }
  }
  const fs::path a = work / "run0", b = work / "run1";
  for (const auto& entry : fs::recursive_directory_iterator(a)) {
    if (!entry.is_regular_file() || entry.path().filename() == "manifest.json") continue;
    const auto relp = fs::relative(entry.path(), a);
    ++compared;
    if (!fs::exists(b / relp) || slurp(entry.path()) != slurp(b / relp)) {
      ++mismatches;
      if (first_diff.empty()) first_diff = relp.string();
    }
  }
  const bool have_svg = fs::exists(a / "0.svg") && fs::exists(a / "2.svg");
  const bool ok = mismatches == 0 && compared >= 9 && have_svg;
  return {ok, fmt("%d files compared, %d differ%s%s", compared, mismatches, first_diff.empty() ? "" : ", first ",
                  first_diff.c_str())};
}

}  // namespace

int main(int argc, char** argv) {
  fs::path work = fs::temp_directory_path() / "rittlab_acceptance";
  std::set<int> only;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--workdir" && i + 1 < argc) work = argv[++i];
    else if (a == "--only" && i + 1 < argc) only.insert(std::atoi(argv[++i]));
    else {
      std::fprintf(stderr, "usage: acceptance [--workdir DIR] [--only K]...\n");
      return 1;
    }
  }

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"resolvent and transfer identities", c1_identities},
      {"functional calculus oracle, homomorphism, contour independence", c2_functional_calculus},
      {"power sequences plateau; Jordan controls grow", c3_forward},
      {"sampled resolvent constant under the closing bound", c4_backward},
      {"Gamma_n reconstruction of T^n", c5_gamma},
      {"Seifert identity", c6_seifert},
      {"polygon construction, Cauchy split, polygonal constant", c7_polygon},
      {"Hilbert-space R-bounds", c8_hilbert},
      {"von Neumann inequality", c9_von_neumann},
      {"positive contractively regular ensembles on l^p", c10_lp},
      {"partition of unity machinery", c11_unity},
      {"CLI determinism", [&] { return c12_determinism(work); }},
  };

  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const int id = static_cast<int>(k) + 1;
    if (!only.empty() && !only.count(id)) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("criterion %2d  %s  %-62s %s  [%.1fs]\n", id, o.pass ? "PASS" : "FAIL", criteria[k].first.c_str(),
                o.detail.c_str(), secs);
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  std::printf("%d criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}
