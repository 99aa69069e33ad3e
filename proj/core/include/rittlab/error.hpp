#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace rittlab {

enum class Errc {
  InvalidArgument,
  Singular,
  IllConditioned,
  NoConvergence,
  Overflow,
  Degenerate,
  NTooSmall,
  Parallel,
  NoPositiveSolution,
  ZeroInput,
  NotRittE,
  NoAdmissibleTheta,
  CoverageFailure,
  IllConditionedNodes,
  NotH0,
  SpectralClearance,
  SpectrumNotEnclosed,
  SampleOnPath,
  PoleInSector,
  SpectrumFailed,
  TransferViolation,
  DivergentSequences,
  TooManyExact,
  FloorFailure,
  FamilyInvalid,
  NotContractive,
  UnrealizableE,
  EmptyScene,
};

/// Upper-case name used in reports and CLI diagnostics, e.g. "NOT_RITT_E".
std::string_view to_string(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what, std::optional<double> detail = std::nullopt)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code), detail_(detail) {}

  Errc code() const noexcept { return code_; }
  // Numeric payload some errors carry (n0 for N_TOO_SMALL, the offending value otherwise).
  std::optional<double> detail() const noexcept { return detail_; }

 private:
  Errc code_;
  std::optional<double> detail_;
};

}  // namespace rittlab
