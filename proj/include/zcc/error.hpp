#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace zcc {

enum class ErrorCode {
  InvalidInput,
  WeightsDoNotSumToZero,
  LengthMismatch,
  SizeMismatch,
  NonConvergence,
  OnDiscriminant,
  PathTooCloseToSigma,
  CollisionDetected,
  LeadingCoefficientVanishes,
  DegenerateConfiguration,
  InfinityRelationViolated,
  ClosureCapExceeded,
  UnexpectedPrimitive,
  GroupMismatch,
  AmbiguousClustering,
  IdentityViolated,
  CriticalFiber,
  IllConditioned,
  InconsistentVerdict,
  Inconclusive,
  DegreeCapExceeded,
  MatchingFailed,
};

/// Broad failure category; the C API and CLI exit codes are derived from it.
enum class ErrorKind { Input, Numeric, Cap };

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::WeightsDoNotSumToZero: return "WeightsDoNotSumToZero";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::SizeMismatch: return "SizeMismatch";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::OnDiscriminant: return "OnDiscriminant";
    case ErrorCode::PathTooCloseToSigma: return "PathTooCloseToSigma";
    case ErrorCode::CollisionDetected: return "CollisionDetected";
    case ErrorCode::LeadingCoefficientVanishes: return "LeadingCoefficientVanishes";
    case ErrorCode::DegenerateConfiguration: return "DegenerateConfiguration";
    case ErrorCode::InfinityRelationViolated: return "InfinityRelationViolated";
    case ErrorCode::ClosureCapExceeded: return "ClosureCapExceeded";
    case ErrorCode::UnexpectedPrimitive: return "UnexpectedPrimitive";
    case ErrorCode::GroupMismatch: return "GroupMismatch";
    case ErrorCode::AmbiguousClustering: return "AmbiguousClustering";
    case ErrorCode::IdentityViolated: return "IdentityViolated";
    case ErrorCode::CriticalFiber: return "CriticalFiber";
    case ErrorCode::IllConditioned: return "IllConditioned";
    case ErrorCode::InconsistentVerdict: return "InconsistentVerdict";
    case ErrorCode::Inconclusive: return "Inconclusive";
    case ErrorCode::DegreeCapExceeded: return "DegreeCapExceeded";
    case ErrorCode::MatchingFailed: return "MatchingFailed";
  }
  return "Unknown";
}

constexpr ErrorKind kind_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidInput:
    case ErrorCode::WeightsDoNotSumToZero:
    case ErrorCode::LengthMismatch:
    case ErrorCode::SizeMismatch:
      return ErrorKind::Input;
    case ErrorCode::ClosureCapExceeded:
    case ErrorCode::DegreeCapExceeded:
      return ErrorKind::Cap;
    default:
      return ErrorKind::Numeric;
  }
}

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }
  ErrorKind kind() const noexcept { return kind_of(code_); }

private:
  ErrorCode code_;
};

}  // namespace zcc
