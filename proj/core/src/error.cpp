#include "rittlab/error.hpp"

namespace rittlab {

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::InvalidArgument: return "INVALID_ARGUMENT";
    case Errc::Singular: return "SINGULAR";
    case Errc::IllConditioned: return "ILL_CONDITIONED";
    case Errc::NoConvergence: return "NO_CONVERGENCE";
    case Errc::Overflow: return "OVERFLOW";
    case Errc::Degenerate: return "DEGENERATE";
    case Errc::NTooSmall: return "N_TOO_SMALL";
    case Errc::Parallel: return "PARALLEL";
    case Errc::NoPositiveSolution: return "NO_POSITIVE_SOLUTION";
    case Errc::ZeroInput: return "ZERO_INPUT";
    case Errc::NotRittE: return "NOT_RITT_E";
    case Errc::NoAdmissibleTheta: return "NO_ADMISSIBLE_THETA";
    case Errc::CoverageFailure: return "COVERAGE_FAILURE";
    case Errc::IllConditionedNodes: return "ILL_CONDITIONED_NODES";
    case Errc::NotH0: return "NOT_H0";
    case Errc::SpectralClearance: return "SPECTRAL_CLEARANCE";
    case Errc::SpectrumNotEnclosed: return "SPECTRUM_NOT_ENCLOSED";
    case Errc::SampleOnPath: return "SAMPLE_ON_PATH";
    case Errc::PoleInSector: return "POLE_IN_SECTOR";
    case Errc::SpectrumFailed: return "SPECTRUM_FAILED";
    case Errc::TransferViolation: return "TRANSFER_VIOLATION";
    case Errc::DivergentSequences: return "DIVERGENT_SEQUENCES";
    case Errc::TooManyExact: return "TOO_MANY_EXACT";
    case Errc::FloorFailure: return "FLOOR_FAILURE";
    case Errc::FamilyInvalid: return "FAMILY_INVALID";
    case Errc::NotContractive: return "NOT_CONTRACTIVE";
    case Errc::UnrealizableE: return "UNREALIZABLE_E";
    case Errc::EmptyScene: return "EMPTY_SCENE";
  }
  return "UNKNOWN";
}

}  // namespace rittlab
