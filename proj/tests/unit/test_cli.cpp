#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cli.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Sandbox {
  fs::path dir;
  explicit Sandbox(const std::string& name) : dir(fs::current_path() / ("cli_" + name)) {
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  fs::path write(const std::string& name, const json& j) const {
    std::ofstream(dir / name) << j.dump();
    return dir / name;
  }
  json read(const std::string& name) const {
    std::ifstream in(dir / name);
    return json::parse(in);
  }
  std::string text(const std::string& name) const {
    std::ifstream in(dir / name);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }
  int run(std::initializer_list<std::string> args) const {
    std::vector<std::string> v{"rittlab", "--out", dir.string()};
    v.insert(v.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& s : v) argv.push_back(s.c_str());
    return rittlab::cli::run(static_cast<int>(argv.size()), argv.data());
  }
};

json diag(std::initializer_list<json> d) {
  const std::size_t n = d.size();
  json entries = json::array();
  std::size_t i = 0;
  for (const auto& x : d) {
    for (std::size_t j = 0; j < n; ++j) entries.push_back(j == i ? x : json(0.0));
    ++i;
  }
  return {{"dim", n}, {"entries", entries}};
}

}  // namespace

TEST_CASE("classify writes a report and a manifest") {
  Sandbox sb("classify");
  const auto m = sb.write("t.json", diag({1.0, json::array({0.0, 0.5})}));
  CHECK(sb.run({"classify", m.string(), "--E", "1,0"}) == 0);
  const auto r = sb.read("classify.json");
  CHECK(r["is_ritt"] == true);
  CHECK(r["r_star"].get<double>() == doctest::Approx(0.5).epsilon(1e-5));
  const auto man = sb.read("manifest.json");
  CHECK(man["verb"] == "classify");
  CHECK(man["inputs"].size() == 1);
  CHECK(man["inputs"][0].contains("fnv1a"));
}

TEST_CASE("classify with auto E and a certificate") {
  Sandbox sb("classify_auto");
  const auto m = sb.write("t.json", diag({-1.0, 0.2}));
  CHECK(sb.run({"classify", m.string(), "--nmax", "50"}) == 0);
  const auto r = sb.read("classify.json");
  CHECK(r["E"].size() == 1);
  CHECK(r["certificate"]["consistent"] == true);
}

TEST_CASE("a Jordan block fails --require-ritt with exit code 2") {
  Sandbox sb("jordan");
  const auto m = sb.write("j.json", json{{"dim", 2}, {"entries", {1.0, 1.0, 0.0, 1.0}}});
  CHECK(sb.run({"classify", m.string(), "--E", "1,0", "--require-ritt"}) == 2);
  CHECK(sb.read("classify.json")["is_ritt"] == false);
  CHECK(fs::exists(sb.dir / "manifest.json"));
}

TEST_CASE("usage errors exit with 1") {
  Sandbox sb("usage");
  CHECK(sb.run({"frobnicate"}) == 1);
  CHECK(sb.run({"classify", (sb.dir / "missing.json").string()}) == 1);
  const auto bad = sb.write("bad.json", json{{"dim", 2}, {"entries", {1.0}}});
  CHECK(sb.run({"classify", bad.string()}) == 1);
}

TEST_CASE("calculus reproduces the polynomial") {
  Sandbox sb("calculus");
  const auto m = sb.write("t.json", diag({1.0, 0.3, json::array({0.1, 0.4})}));
  CHECK(sb.run({"calculus", m.string(), "--phi", "vanishing", "--E", "1,0", "--s", "0.9"}) == 0);
  const auto r = sb.read("calculus.json");
  CHECK(r["oracle_relative_error"].get<double>() <= 1e-8);
  CHECK(r["converged"] == true);
  // 1 + z does not vanish at 1.
  CHECK(sb.run({"calculus", m.string(), "--phi", "1,1", "--E", "1,0"}) == 2);
}

TEST_CASE("polygon report and rendering") {
  Sandbox sb("polygon");
  const auto m = sb.write("t.json", diag({1.0, -1.0, 0.5, json::array({0.0, 0.6})}));
  CHECK(sb.run({"polygon", m.string(), "--E", "roots:2"}) == 0);
  const auto r = sb.read("polygon.json");
  CHECK(r["spectrum_enclosed"] == true);
  CHECK(r["membership_disagreements"] == 0);
  CHECK(sb.run({"render", (sb.dir / "polygon.json").string(), "-o", (sb.dir / "p.svg").string()}) == 0);
  const auto svg = sb.text("p.svg");
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("</svg>") != std::string::npos);
  CHECK(svg.find("<path") != std::string::npos);
}

TEST_CASE("render refuses an empty scene") {
  Sandbox sb("render_empty");
  const auto g = sb.write("g.json", json{{"E", json::array()}});
  CHECK(sb.run({"render", g.string(), "-o", (sb.dir / "x.svg").string()}) == 1);
}

TEST_CASE("rbound of a singleton") {
  Sandbox sb("rbound");
  const auto f = sb.write("f.json", json{{"matrices", {diag({2.0, 0.5})}}});
  CHECK(sb.run({"rbound", f.string(), "--p", "2", "--exact-upto", "2"}) == 0);
  CHECK(sb.read("rbound.json")["value"].get<double>() == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(sb.run({"rbound", f.string(), "--exact-upto", "21"}) == 1);
}

TEST_CASE("unity on two points") {
  Sandbox sb("unity");
  CHECK(sb.run({"unity", "--M", "4", "--E", "roots:2", "--r", "0.5"}) == 0);
  const auto r = sb.read("unity.json");
  CHECK(r["unity_defect"].get<double>() <= 1e-10);
  CHECK(r["terms"] == 81);
}

TEST_CASE("verify suites pass") {
  Sandbox sb("verify");
  for (const char* s : {"seifert", "transfer"}) {
    CHECK(sb.run({"verify", "--suite", s}) == 0);
    CHECK(sb.read(std::string("verify_") + s + ".json")["pass"] == true);
  }
  CHECK(sb.run({"verify", "--suite", "nope"}) == 1);
}

TEST_CASE("lp experiment writes samples and summary") {
  Sandbox sb("lp");
  const auto cfg = sb.write("cfg.json", json{{"dim", 4},
                                             {"p", 3.0},
                                             {"cycle_orders", {2}},
                                             {"count", 2},
                                             {"seed", 1},
                                             {"s_grid", {0.9}},
                                             {"max_degree", 10}});
  const int rc = sb.run({"lp-experiment", cfg.string()});
  CHECK((rc == 0 || rc == 2));
  CHECK(fs::exists(sb.dir / "lp_samples.jsonl"));
  CHECK(fs::exists(sb.dir / "lp_summary.csv"));
  CHECK(sb.read("lp_experiment.json")["samples"] == 2);
  const auto bad = sb.write("bad.json", json{{"dim", 2}, {"cycle_orders", {3}}, {"count", 1}});
  CHECK(sb.run({"lp-experiment", bad.string()}) == 2);
}

TEST_CASE("fixed seeds give identical reports") {
  Sandbox a("det_a"), b("det_b");
  CHECK(a.run({"--seed", "7", "unity", "--M", "3", "--E", "roots:2"}) == 0);
  CHECK(b.run({"--seed", "7", "unity", "--M", "3", "--E", "roots:2"}) == 0);
  CHECK(a.text("unity.json") == b.text("unity.json"));
}
