#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace isometrica {

enum class ErrorKind {
  kInvalidArgument,
  kShapeMismatch,
  kNotHermitian,
  kNoConvergence,
  kNotPartialIsometry,
  kRankTooLarge,
  kIllConditioned,
  kCornerSingular,
  kNotNilpotent,
  kNotProjection,
  kTooFar,
  kStepTooLarge,
  kNotExtremal,
  kPatternConflict,
  kOutOfRange,
  kBadWitness,
  kParseError,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries a machine-checkable kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidArgument: return "InvalidArgument";
    case ErrorKind::kShapeMismatch: return "ShapeMismatch";
    case ErrorKind::kNotHermitian: return "NotHermitian";
    case ErrorKind::kNoConvergence: return "NoConvergence";
    case ErrorKind::kNotPartialIsometry: return "NotPartialIsometry";
    case ErrorKind::kRankTooLarge: return "RankTooLarge";
    case ErrorKind::kIllConditioned: return "IllConditioned";
    case ErrorKind::kCornerSingular: return "CornerSingular";
    case ErrorKind::kNotNilpotent: return "NotNilpotent";
    case ErrorKind::kNotProjection: return "NotProjection";
    case ErrorKind::kTooFar: return "TooFar";
    case ErrorKind::kStepTooLarge: return "StepTooLarge";
    case ErrorKind::kNotExtremal: return "NotExtremal";
    case ErrorKind::kPatternConflict: return "PatternConflict";
    case ErrorKind::kOutOfRange: return "OutOfRange";
    case ErrorKind::kBadWitness: return "BadWitness";
    case ErrorKind::kParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace isometrica
