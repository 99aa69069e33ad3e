#include "io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace rittlab::cli {

namespace {

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

double number(const std::string& tok) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(tok, &used);
  } catch (const std::exception&) {
    throw InputError("not a number: '" + tok + "'");
  }
  while (used < tok.size() && std::isspace(static_cast<unsigned char>(tok[used]))) ++used;
  if (used != tok.size()) throw InputError("not a number: '" + tok + "'");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream ss(s);
  while (std::getline(ss, cur, sep)) out.push_back(cur);
  return out;
}

}  // namespace

json read_json(const std::filesystem::path& path) {
  try {
    return json::parse(slurp(path));
  } catch (const json::exception& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  out << text;
}

void write_json(const std::filesystem::path& path, const json& j) { write_text(path, j.dump(2) + "\n"); }

std::string file_hash(const std::filesystem::path& path) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : slurp(path)) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

cplx complex_from(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  throw InputError("expected a number or [re, im], got " + j.dump());
}

json to_json(const Matrix& m) {
  json entries = json::array();
  for (auto z : m.data()) entries.push_back(to_json(z));
  return {{"dim", m.dim()}, {"entries", entries}};
}

json to_json(std::span<const cplx> v) {
  json a = json::array();
  for (auto z : v) a.push_back(to_json(z));
  return a;
}

Matrix matrix_from(const json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("entries")) throw InputError("matrix needs dim and entries");
  const auto n = j.at("dim").get<std::size_t>();
  const auto& e = j.at("entries");
  if (!e.is_array() || e.size() != n * n) throw InputError("matrix entries must hold dim^2 values");
  std::vector<cplx> v;
  v.reserve(e.size());
  for (const auto& x : e) v.push_back(complex_from(x));
  try {
    return Matrix(n, std::move(v));
  } catch (const std::exception& ex) {
    throw InputError(ex.what());
  }
}

Matrix read_matrix(const std::filesystem::path& path) { return matrix_from(read_json(path)); }

std::vector<Matrix> read_family(const std::filesystem::path& path) {
  const json j = read_json(path);
  const json& arr = j.is_object() && j.contains("matrices") ? j.at("matrices") : j;
  if (!arr.is_array() || arr.empty()) throw InputError("family must be a non-empty array of matrices");
  std::vector<Matrix> out;
  for (const auto& m : arr) out.push_back(matrix_from(m));
  return out;
}

PeripheralSet parse_e(const std::string& spec) {
  if (spec.rfind("roots:", 0) == 0) {
    const double k = number(spec.substr(6));
    if (k < 1 || k != std::floor(k)) throw InputError("roots:k needs a positive integer");
    return PeripheralSet::roots_of_unity(static_cast<int>(k));
  }
  const auto toks = split(spec, ',');
  std::vector<cplx> pts;
  if (toks.size() == 1) {
    pts.push_back(number(toks[0]));
  } else {
    if (toks.size() % 2) throw InputError("E list needs re,im pairs");
    for (std::size_t i = 0; i < toks.size(); i += 2) pts.emplace_back(number(toks[i]), number(toks[i + 1]));
  }
  try {
    return PeripheralSet(std::move(pts));
  } catch (const std::exception& ex) {
    throw InputError(std::string("E: ") + ex.what());
  }
}

PeripheralSet e_from(const json& j) {
  if (j.is_string()) return parse_e(j.get<std::string>());
  if (!j.is_array()) throw InputError("E must be a string or an array of points");
  std::vector<cplx> pts;
  for (const auto& x : j) pts.push_back(complex_from(x));
  try {
    return PeripheralSet(std::move(pts));
  } catch (const std::exception& ex) {
    throw InputError(std::string("E: ") + ex.what());
  }
}

Polynomial parse_poly(const std::string& spec, const PeripheralSet& e) {
  if (spec == "vanishing") return e.vanishing_polynomial();
  std::vector<cplx> c;
  for (const auto& tok : split(spec, ',')) {
    const auto parts = split(tok, ':');
    if (parts.size() == 1) c.emplace_back(number(parts[0]));
    else if (parts.size() == 2) c.emplace_back(number(parts[0]), number(parts[1]));
    else throw InputError("bad coefficient '" + tok + "'");
  }
  if (c.empty()) throw InputError("empty polynomial");
  return Polynomial(std::move(c));
}

}  // namespace rittlab::cli
