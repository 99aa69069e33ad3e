#pragma once

namespace rittlab::cli {

/// Parses argv and runs one verb. Returns the process exit code:
/// 0 success, 1 usage or IO error, 2 when the mathematics says no.
int run(int argc, const char* const* argv);

}  // namespace rittlab::cli
