#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace randfusion {

enum class ErrorKind {
  InvalidDelta,
  InvalidBeta,
  InvalidEpsilon,
  InvalidDims,
  DimensionMismatch,
  TooFewSubspaces,
  NotSymmetric,
  NoConvergence,
  RankDeficient,
  DegenerateDraw,
  NotOrthonormal,
  NonFinite,
  ConfigInvalid,
  ParseError,
  IoError,
  TrialFailure,
};

/// Stable tag used in `error[<tag>]` diagnostics.
std::string_view kind_name(ErrorKind kind) noexcept;

/// Validation errors map to CLI exit code 1, everything else to 2.
bool is_validation_error(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace randfusion
