#include "randfusion/error.hpp"

namespace randfusion {

std::string_view kind_name(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidDelta: return "InvalidDelta";
    case ErrorKind::InvalidBeta: return "InvalidBeta";
    case ErrorKind::InvalidEpsilon: return "InvalidEpsilon";
    case ErrorKind::InvalidDims: return "InvalidDims";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::TooFewSubspaces: return "TooFewSubspaces";
    case ErrorKind::NotSymmetric: return "NotSymmetric";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::RankDeficient: return "RankDeficient";
    case ErrorKind::DegenerateDraw: return "DegenerateDraw";
    case ErrorKind::NotOrthonormal: return "NotOrthonormal";
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::ConfigInvalid: return "ConfigInvalid";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::IoError: return "IoError";
    case ErrorKind::TrialFailure: return "TrialFailure";
  }
  return "Unknown";
}

bool is_validation_error(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidDelta:
    case ErrorKind::InvalidBeta:
    case ErrorKind::InvalidEpsilon:
    case ErrorKind::InvalidDims:
    case ErrorKind::DimensionMismatch:
    case ErrorKind::TooFewSubspaces:
    case ErrorKind::NotSymmetric:
    case ErrorKind::NotOrthonormal:
    case ErrorKind::NonFinite:
    case ErrorKind::ConfigInvalid:
    case ErrorKind::ParseError:
      return true;
    default:
      return false;
  }
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(message), kind_(kind) {}

}  // namespace randfusion
