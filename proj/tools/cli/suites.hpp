#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "io.hpp"

namespace rittlab::cli {

struct SuiteResult {
  json report;
  bool pass = false;
};

std::vector<std::string> suite_names();
/// Throws InputError for an unknown suite.
SuiteResult run_suite(const std::string& name, std::uint64_t seed);

}  // namespace rittlab::cli
