#include <chrono>
#include <ctime>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>

#include <CLI11.hpp>

#include "cli.hpp"
#include "io.hpp"
#include "render.hpp"
#include "rittlab/calculus.hpp"
#include "rittlab/classify.hpp"
#include "rittlab/error.hpp"
#include "rittlab/linalg.hpp"
#include "rittlab/lp.hpp"
#include "rittlab/polygon.hpp"
#include "rittlab/rbound.hpp"
#include "rittlab/unity.hpp"
#include "suites.hpp"

#ifndef RITTLAB_VERSION
#define RITTLAB_VERSION "0.0.0"
#endif

namespace rittlab::cli {

namespace fs = std::filesystem;

namespace {

/// Raised when a report shows the mathematics failing (exit code 2).
struct Falsified : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Run {
  std::string verb;
  fs::path out = ".";
  std::uint64_t seed = 0;
  json config = json::object();
  json inputs = json::array();
  json timings = json::object();

  void input(const fs::path& p) { inputs.push_back({{"path", p.string()}, {"fnv1a", file_hash(p)}}); }

  template <class F>
  auto stage(const std::string& name, F&& f) {
    const auto t0 = std::chrono::steady_clock::now();
    if constexpr (std::is_void_v<decltype(f())>) {
      f();
      timings[name] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    } else {
      auto r = f();
      timings[name] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      return r;
    }
  }
};

std::string utc_now() {
  const std::time_t t = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

void write_manifest(const Run& run, const std::string& started) {
  json m = {{"tool", "rittlab"},     {"version", RITTLAB_VERSION}, {"verb", run.verb},
            {"config", run.config},  {"inputs", run.inputs},      {"seed", run.seed},
            {"wall_clock", started}, {"timings", run.timings}};
  write_json(run.out / "manifest.json", m);
}

json spectrum_json(const Spectrum& s) {
  json a = json::array();
  for (const auto& ev : s.eigenvalues)
    a.push_back({{"value", to_json(ev.value)}, {"multiplicity", ev.multiplicity}, {"semisimple", ev.semisimple}});
  return a;
}

json estimate_json(const ConstantEstimate& k) {
  return {{"k_lower", k.k_lower}, {"argmax", k.argmax}, {"degrees", k.degrees}, {"k_by_degree", k.k_by_degree}};
}

PeripheralSet resolve_e(const std::string& spec, const Matrix& t) {
  return spec == "auto" ? auto_peripheral_set(t) : parse_e(spec);
}

json e_json(const PeripheralSet& e) { return to_json(e.points()); }

// ---------------------------------------------------------------------------

void cmd_classify(Run& run, const fs::path& path, const std::string& e_spec, double p, int nmax, bool require) {
  run.input(path);
  const Matrix t = read_matrix(path);
  const PeripheralSet e = resolve_e(e_spec, t);
  run.config = {{"matrix", path.string()}, {"E", e_json(e)}, {"p", p}, {"nmax", nmax}, {"require_ritt", require}};
  const auto rep = run.stage("classify", [&] { return classify(t, e, p); });
  json j = {{"is_ritt", rep.is_ritt},
            {"c_hat", rep.c_hat},
            {"oracle_verdict", rep.oracle_verdict},
            {"sampling_verdict", rep.sampling_verdict},
            {"growth_exponents", rep.growth_exponents},
            {"reason", rep.fd.reason},
            {"spectrum", spectrum_json(rep.fd.spectrum)},
            {"E", e_json(e)}};
  j["r_star"] = rep.is_ritt ? json(rep.r_star) : json(nullptr);
  std::vector<cplx> eig;
  for (const auto& ev : rep.fd.spectrum.eigenvalues) eig.push_back(ev.value);
  j["geometry"] = {{"E", e_json(e)}, {"eigenvalues", to_json(eig)}};
  if (rep.is_ritt && rep.r_star > 1e-3) j["geometry"]["stolz"] = {rep.r_star};
  if (nmax > 0 && rep.is_ritt) {
    const auto cert = run.stage("certificate", [&] { return power_certificate(t, e, p, nmax); });
    j["certificate"] = {{"c0", cert.c0},       {"c1", cert.c1},           {"c_q", cert.c_q},
                        {"bound", cert.apriori_bound}, {"c_hat", cert.c_hat}, {"consistent", cert.consistent}};
  }
  write_json(run.out / "classify.json", j);
  std::cout << "is_ritt " << (rep.is_ritt ? "true" : "false") << "  c_hat " << rep.c_hat;
  if (rep.is_ritt) std::cout << "  r_star " << rep.r_star;
  std::cout << "\n";
  if (require && !rep.is_ritt) throw Error(Errc::NotRittE, rep.fd.reason.empty() ? "sampling verdict" : rep.fd.reason);
}

void cmd_calculus(Run& run, const fs::path& path, const std::string& phi_spec, const std::string& e_spec, double s,
                  double tol) {
  run.input(path);
  const Matrix t = read_matrix(path);
  const PeripheralSet e = resolve_e(e_spec, t);
  const Polynomial phi = parse_poly(phi_spec, e);
  run.config = {{"matrix", path.string()}, {"phi", phi_spec}, {"E", e_json(e)}, {"s", s}, {"tol", tol}};
  QuadConfig q;
  q.target_tol = tol;
  const auto res = run.stage("contour", [&] { return fc_contour(phi, t, e, s, q); });
  const Matrix exact = run.stage("oracle", [&] { return mat_poly(phi, t); });
  const double rel = norm2(res.value - exact) / std::max(1.0, norm2(exact));
  json j = {{"value", to_json(res.value)}, {"error_estimate", res.error_estimate}, {"u", res.u},
            {"levels", res.levels},        {"converged", res.converged},          {"oracle_relative_error", rel}};
  write_json(run.out / "calculus.json", j);
  std::cout << "u " << res.u << "  levels " << res.levels << "  oracle relative error " << rel << "\n";
}

void cmd_polygon(Run& run, const fs::path& path, const std::string& e_spec, std::optional<double> theta,
                 std::optional<double> theta_prime) {
  run.input(path);
  const Matrix t = read_matrix(path);
  const PeripheralSet e = resolve_e(e_spec, t);
  run.config = {{"matrix", path.string()}, {"E", e_json(e)}};
  if (theta) run.config["theta"] = *theta;
  if (theta_prime) run.config["theta_prime"] = *theta_prime;
  PolygonConfig cfg;
  cfg.theta = theta;
  cfg.theta_prime = theta_prime;
  cfg.seed = run.seed;
  const auto res = run.stage("polygon", [&] { return certified_polygon(t, e, cfg); });
  const auto eig = eigenvalues(t);
  json j = {{"theta", res.theta},
            {"theta_prime", res.theta_prime},
            {"r", res.r},
            {"delta", to_json(res.delta.vertices)},
            {"delta0", to_json(res.delta0.vertices)},
            {"anchors", to_json(res.anchors)},
            {"angles", res.angles},
            {"convexified", res.convexified},
            {"epsilon", res.epsilon},
            {"membership_disagreements", res.membership_disagreements},
            {"spectrum_enclosed", res.spectrum_enclosed},
            {"enclosed_s", res.enclosed_s}};
  j["geometry"] = {{"E", e_json(e)}, {"polygons", {to_json(res.delta.vertices)}}, {"eigenvalues", to_json(eig)}};
  write_json(run.out / "polygon.json", j);
  std::cout << "polygon with " << res.delta.size() << " vertices, theta " << res.theta << ", theta' "
            << res.theta_prime << "\n";
}

void cmd_rbound(Run& run, const fs::path& path, double p, int exact_upto, int trials) {
  run.input(path);
  const auto fam = read_family(path);
  run.config = {{"family", path.string()}, {"p", p}, {"exact_upto", exact_upto}, {"trials", trials}};
  SearchConfig cfg;
  cfg.n_max = exact_upto;
  cfg.seed = run.seed;
  const auto est = run.stage("search", [&] { return rbound_lower(fam, p, cfg); });
  json j = {{"value", est.value}, {"ops", est.ops}, {"family_size", est.family_size}, {"mode", "exact"}};
  json vecs = json::array();
  for (const auto& v : est.vectors) vecs.push_back(to_json(v));
  j["vectors"] = vecs;
  if (trials > 0) {
    // Monte Carlo re-evaluation of the witness.
    RadSample num{{}, p, RadMode::MonteCarlo, trials, run.seed}, den = num;
    for (std::size_t i = 0; i < est.ops.size(); ++i) {
      num.vectors.push_back(fam[est.ops[i]].apply(est.vectors[i]));
      den.vectors.push_back(est.vectors[i]);
    }
    const auto a = rademacher_norm(num), b = rademacher_norm(den);
    j["monte_carlo"] = {{"numerator", a.value}, {"numerator_se", a.std_error},
                        {"denominator", b.value}, {"denominator_se", b.std_error}, {"trials", trials}};
  }
  write_json(run.out / "rbound.json", j);
  std::cout << "R-bound lower estimate " << est.value << " with " << est.ops.size() << " terms\n";
}

void cmd_unity(Run& run, const std::string& family, int m, const std::string& e_spec, double r) {
  if (family != "default") throw InputError("only the default family is available");
  const PeripheralSet e = parse_e(e_spec);
  run.config = {{"family", family}, {"M", m}, {"E", e_json(e)}, {"r", r}};
  const auto fam = run.stage("family", [&] { return default_family(m); });
  std::mt19937_64 rng(run.seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<cplx> grid;
  for (int i = 0; i < 1000; ++i) grid.push_back(std::polar(0.999 * std::sqrt(u(rng)), 2.0 * kPi * u(rng)));
  const auto rep = run.stage("verify", [&] { return verify_unity(fam, e, r, grid, m); });
  json j = {{"floor", fam.floor_value},
            {"decay_s", fam.decay_s},
            {"decay_c", fam.decay_c},
            {"window", {fam.window_min, fam.window_max}},
            {"sup_sum_phi", rep.sup_sum_phi},
            {"sup_sum_psi", rep.sup_sum_psi},
            {"sup_theta", rep.sup_theta},
            {"unity_defect", rep.unity_defect},
            {"integral_max_over_median", rep.integral_max_over_median},
            {"pullback_residual", rep.pullback_residual},
            {"excised_radius", rep.excised_radius},
            {"terms", rep.terms}};
  write_json(run.out / "unity.json", j);
  std::cout << "unity defect " << rep.unity_defect << "  max/median " << rep.integral_max_over_median << "\n";
}

void cmd_lp(Run& run, const fs::path& path) {
  run.input(path);
  const json c = read_json(path);
  LpEnsembleConfig cfg;
  std::vector<double> s_grid{0.9, 0.95, 0.99};
  int max_degree = 50;
  try {
    cfg.dim = c.value("dim", cfg.dim);
    cfg.p = c.value("p", cfg.p);
    if (c.contains("E")) cfg.cycle_orders = cycle_orders_for(e_from(c.at("E")));
    if (c.contains("cycle_orders")) cfg.cycle_orders = c.at("cycle_orders").get<std::vector<int>>();
    cfg.gap = c.value("gap", cfg.gap);
    cfg.count = c.value("count", cfg.count);
    cfg.seed = c.value("seed", run.seed);
    cfg.symmetric_block = c.value("symmetric_block", cfg.symmetric_block);
    s_grid = c.value("s_grid", s_grid);
    max_degree = c.value("max_degree", max_degree);
  } catch (const json::exception& ex) {
    throw InputError(std::string("lp config: ") + ex.what());
  }
  run.config = {{"dim", cfg.dim},     {"p", cfg.p},         {"cycle_orders", cfg.cycle_orders},
                {"gap", cfg.gap},     {"count", cfg.count}, {"seed", cfg.seed},
                {"s_grid", s_grid},   {"max_degree", max_degree}, {"symmetric_block", cfg.symmetric_block}};
  const auto rep = run.stage("experiment", [&] { return positive_ensemble_experiment(cfg, s_grid, max_degree); });

  std::string jsonl, csv = "sample,r_star,regular_norm,domain,s,k_lower,growth_25_50,semigroup_max\n";
  const int d0 = max_degree >= 50 ? 25 : max_degree / 2;
  auto row = [&](std::size_t i, const LpSampleReport& s, const std::string& dom, double sv, const ConstantEstimate& k) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g,%s,%.17g,%.17g,%.17g,%.17g\n", i, s.r_star, s.regular_norm,
                  dom.c_str(), sv, k.k_lower, k.growth(d0, max_degree), s.semigroup.max_norm);
    csv += buf;
  };
  for (std::size_t i = 0; i < rep.samples.size(); ++i) {
    const auto& s = rep.samples[i];
    json rec = {{"sample", i},
                {"r_star", s.r_star},
                {"regular_norm", s.regular_norm},
                {"polygon", estimate_json(s.polygon)},
                {"polygon_vertices", s.polygon_vertices},
                {"semigroup_max", s.semigroup.max_norm},
                {"semigroup_ok", s.semigroup.all_ok},
                {"finite", s.finite},
                {"degree_stable", s.degree_stable}};
    rec["stolz"] = json::array();
    for (const auto& d : s.stolz) {
      rec["stolz"].push_back({{"s", d.s}, {"estimate", estimate_json(d.estimate)}});
      row(i, s, "stolz", d.s, d.estimate);
    }
    row(i, s, "polygon", 0.0, s.polygon);
    jsonl += rec.dump() + "\n";
  }
  write_text(run.out / "lp_samples.jsonl", jsonl);
  write_text(run.out / "lp_summary.csv", csv);
  json j = {{"E", e_json(rep.e)},          {"samples", rep.samples.size()}, {"all_finite", rep.all_finite},
            {"all_stable", rep.all_stable}, {"all_semigroup_ok", rep.all_semigroup_ok}};
  write_json(run.out / "lp_experiment.json", j);
  std::cout << rep.samples.size() << " samples  finite " << rep.all_finite << "  stable " << rep.all_stable
            << "  semigroup " << rep.all_semigroup_ok << "\n";
  if (!(rep.all_finite && rep.all_stable && rep.all_semigroup_ok))
    throw Falsified("constants not finite and degree-stable on every sample");
}

void cmd_verify(Run& run, const std::string& suite) {
  run.config = {{"suite", suite}};
  const auto r = run.stage(suite, [&] { return run_suite(suite, run.seed); });
  write_json(run.out / ("verify_" + suite + ".json"), r.report);
  std::cout << "suite " << suite << (r.pass ? " passed" : " FAILED") << "\n";
  if (!r.pass) throw Falsified("suite " + suite + " failed");
}

void cmd_render(Run& run, const fs::path& path, const fs::path& svg) {
  run.input(path);
  run.config = {{"geometry", path.string()}, {"output", svg.string()}};
  const auto scene = scene_from(read_json(path));
  const auto text = run.stage("render", [&] { return render_svg(scene); });
  write_text(svg, text);
  std::cout << "wrote " << svg.string() << "\n";
}

int exit_code_for(Errc code) {
  switch (code) {
    case Errc::NotRittE:
    case Errc::NotContractive:
    case Errc::DivergentSequences:
    case Errc::TransferViolation:
    case Errc::UnrealizableE:
    case Errc::FloorFailure:
    case Errc::NoAdmissibleTheta:
    case Errc::CoverageFailure:
    case Errc::NotH0:
    case Errc::SpectralClearance:
      return 2;
    default:
      return 1;
  }
}

}  // namespace

int run(int argc, const char* const* argv) {
  CLI::App app{"rittlab: Ritt_E operators, Stolz domains and functional calculus experiments", "rittlab"};
  app.require_subcommand(1);
  Run r;
  std::string out = ".";
  app.add_option("--out,-O", out, "Directory for reports and the run manifest");
  app.add_option("--seed", r.seed, "Random seed (default 0)");

  std::string matrix, e_spec = "auto", phi, family_kind = "default", suite, output;
  double p = 2.0, s = 0.9, tol = 1e-9, rr = 0.5;
  int nmax = 0, exact_upto = 4, trials = 0, m = 8;
  bool require = false;
  std::optional<double> theta, theta_prime;
  std::function<void()> action;

  auto* c = app.add_subcommand("classify", "Test the Ritt_E condition and estimate the resolvent constant");
  c->add_option("matrix", matrix, "Matrix JSON")->required()->check(CLI::ExistingFile);
  c->add_option("--E", e_spec, "Peripheral set: re,im pairs, roots:k or auto");
  c->add_option("--p", p, "Exponent of l^p");
  c->add_option("--nmax", nmax, "Also certify with power sequences up to this n");
  c->add_flag("--require-ritt", require, "Exit 2 unless the matrix is Ritt_E");
  c->callback([&] { action = [&] { cmd_classify(r, matrix, e_spec, p, nmax, require); }; });

  auto* f = app.add_subcommand("calculus", "phi(T) by contour quadrature over the boundary of E_u");
  f->add_option("matrix", matrix, "Matrix JSON")->required()->check(CLI::ExistingFile);
  f->add_option("--phi", phi, "Coefficients c0,c1,... (re or re:im) or 'vanishing'")->required();
  f->add_option("--E", e_spec, "Peripheral set")->required();
  f->add_option("--s", s, "Stolz parameter s in (0,1)");
  f->add_option("--tol", tol, "Quadrature tolerance");
  f->callback([&] { action = [&] { cmd_calculus(r, matrix, phi, e_spec, s, tol); }; });

  auto* g = app.add_subcommand("polygon", "Construct a polygon carrying the functional calculus");
  g->add_option("matrix", matrix, "Matrix JSON")->required()->check(CLI::ExistingFile);
  g->add_option("--E", e_spec, "Peripheral set")->required();
  g->add_option("--theta", theta, "Sector angle at the points of E");
  g->add_option("--theta-prime", theta_prime, "Sector angle at the intermediate points");
  g->callback([&] { action = [&] { cmd_polygon(r, matrix, e_spec, theta, theta_prime); }; });

  auto* b = app.add_subcommand("rbound", "Lower estimate of the R-bound of a finite family");
  b->add_option("family", matrix, "Family JSON")->required()->check(CLI::ExistingFile);
  b->add_option("--p", p, "Exponent of l^p");
  b->add_option("--exact-upto", exact_upto, "Largest witness size, evaluated exactly")->check(CLI::Range(1, 20));
  b->add_option("--trials", trials, "Monte Carlo re-evaluation of the witness");
  b->callback([&] { action = [&] { cmd_rbound(r, matrix, p, exact_upto, trials); }; });

  auto* u = app.add_subcommand("unity", "Check a sectorial partition of unity transported to E");
  u->add_option("--family", family_kind, "Family (default)");
  u->add_option("--M", m, "Truncation")->check(CLI::Range(0, 64));
  u->add_option("--E", e_spec, "Peripheral set")->required();
  u->add_option("--r", rr, "Radius of E_r for the boundary integrals");
  u->callback([&] { action = [&] { cmd_unity(r, family_kind, m, e_spec, rr); }; });

  auto* l = app.add_subcommand("lp-experiment", "Positive contractively regular ensembles on l^p");
  l->add_option("config", matrix, "Experiment config JSON")->required()->check(CLI::ExistingFile);
  l->callback([&] { action = [&] { cmd_lp(r, matrix); }; });

  auto* v = app.add_subcommand("verify", "Run a self-check suite");
  v->add_option("--suite", suite, "One of seifert, transfer, fc, gamma, vonneumann")->required();
  v->callback([&] { action = [&] { cmd_verify(r, suite); }; });

  auto* w = app.add_subcommand("render", "Render a geometry document to SVG");
  w->add_option("geometry", matrix, "Geometry or report JSON")->required()->check(CLI::ExistingFile);
  w->add_option("-o,--output", output, "SVG path")->required();
  w->callback([&] { action = [&] { cmd_render(r, matrix, output); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << app.help();
    return 1;
  }

  r.verb = app.get_subcommands().front()->get_name();
  r.out = out;
  const std::string started = utc_now();
  int code = 0;
  try {
    action();
  } catch (const Error& e) {
    std::cerr << "rittlab " << r.verb << ": " << e.what() << "\n";
    code = exit_code_for(e.code());
  } catch (const Falsified& e) {
    std::cerr << "rittlab " << r.verb << ": " << e.what() << "\n";
    code = 2;
  } catch (const std::exception& e) {
    std::cerr << "rittlab " << r.verb << ": " << e.what() << "\n";
    return 1;
  }
  try {
    write_manifest(r, started);
  } catch (const std::exception& e) {
    std::cerr << "rittlab: " << e.what() << "\n";
    return 1;
  }
  return code;
}

}  // namespace rittlab::cli
