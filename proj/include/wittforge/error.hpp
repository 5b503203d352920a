#pragma once

#include <stdexcept>
#include <string>

namespace wittforge {

enum class ErrorCode {
  ZeroElement,
  UnknownVariable,
  FieldMismatch,
  InfiniteSquareClassGroup,
  NotLaurent,
  DeltaIsSquare,
  UnsupportedDelta,
  UnsupportedField,
  InvalidField,
  FactorBoundExceeded,
  Degenerate,
  NotSymmetric,
  ZeroScale,
  ZeroSlot,
  NotPfister,
  NoSplit,
  WitnessUnsupported,
  ZeroArgument,
  DimTooLarge,
  UnsupportedDim,
  AlgebraMismatch,
  NotSeparable,
  LambdaNotUnit,
  DSquare,
  UnsupportedCubic,
  PreconditionFailed,
  DimensionMismatch,
};

inline const char* error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::ZeroElement: return "ZeroElement";
    case ErrorCode::UnknownVariable: return "UnknownVariable";
    case ErrorCode::FieldMismatch: return "FieldMismatch";
    case ErrorCode::InfiniteSquareClassGroup: return "InfiniteSquareClassGroup";
    case ErrorCode::NotLaurent: return "NotLaurent";
    case ErrorCode::DeltaIsSquare: return "DeltaIsSquare";
    case ErrorCode::UnsupportedDelta: return "UnsupportedDelta";
    case ErrorCode::UnsupportedField: return "UnsupportedField";
    case ErrorCode::InvalidField: return "InvalidField";
    case ErrorCode::FactorBoundExceeded: return "FactorBoundExceeded";
    case ErrorCode::Degenerate: return "Degenerate";
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::ZeroScale: return "ZeroScale";
    case ErrorCode::ZeroSlot: return "ZeroSlot";
    case ErrorCode::NotPfister: return "NotPfister";
    case ErrorCode::NoSplit: return "NoSplit";
    case ErrorCode::WitnessUnsupported: return "WitnessUnsupported";
    case ErrorCode::ZeroArgument: return "ZeroArgument";
    case ErrorCode::DimTooLarge: return "DimTooLarge";
    case ErrorCode::UnsupportedDim: return "UnsupportedDim";
    case ErrorCode::AlgebraMismatch: return "AlgebraMismatch";
    case ErrorCode::NotSeparable: return "NotSeparable";
    case ErrorCode::LambdaNotUnit: return "LambdaNotUnit";
    case ErrorCode::DSquare: return "DSquare";
    case ErrorCode::UnsupportedCubic: return "UnsupportedCubic";
    case ErrorCode::PreconditionFailed: return "PreconditionFailed";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
  }
  return "Unknown";
}

/// Every domain failure in the library is reported through this type; the
/// code identifies the failure, the message carries the details.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }
  const char* name() const noexcept { return error_name(code_); }

 private:
  ErrorCode code_;
};

}  // namespace wittforge
