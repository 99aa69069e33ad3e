#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "rittlab/domains.hpp"
#include "rittlab/matrix.hpp"
#include "rittlab/polynomial.hpp"

namespace rittlab::cli {

using json = nlohmann::json;

/// Thrown for malformed input; maps to exit code 1.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json read_json(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);
void write_json(const std::filesystem::path& path, const json& j);

/// FNV-1a of the file bytes, as 16 hex digits.
std::string file_hash(const std::filesystem::path& path);

json to_json(cplx z);
cplx complex_from(const json& j);
json to_json(const Matrix& m);
json to_json(std::span<const cplx> v);

/// {"dim": n, "entries": [[re, im], ...]} in row-major order; bare reals allowed.
Matrix matrix_from(const json& j);
Matrix read_matrix(const std::filesystem::path& path);
/// {"matrices": [matrix, ...]} or a bare array of matrices.
std::vector<Matrix> read_family(const std::filesystem::path& path);

/// "roots:k", or comma-separated "re,im" pairs (a single number is a real point).
PeripheralSet parse_e(const std::string& spec);
/// E given as a JSON string (same syntax) or an array of [re, im].
PeripheralSet e_from(const json& j);

/// Ascending coefficients "c0,c1,..." where each entry is "re" or "re:im".
/// "vanishing" stands for prod_j (xi_j - z) over E.
Polynomial parse_poly(const std::string& spec, const PeripheralSet& e);

}  // namespace rittlab::cli
