#pragma once

#include <stdexcept>
#include <string>

namespace stokesnet {

/// Machine-readable failure categories. The CLI maps these to exit codes and
/// prints the category name so scripts can branch on it.
enum class ErrorCode {
  ParseError,
  IoError,
  InvalidSkeleton,
  ArmTooShort,
  SelfIntersection,
  SmoothingOverlap,
  WidthMismatch,
  MisalignedInterface,
  DanglingPort,
  FluxImbalance,
  DisconnectedNetwork,
  NotAcyclic,
  RankDeficient,
  MissingScatteringMatrix,
  IncompatibleData,
  NoConvergence,
  DimensionMismatch,
  PointTooCloseToBoundary,
  PointOutsideDomain,
  OutOfChannel,
  NonPositiveValues,
  RootSearchFailed,
};

inline const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::InvalidSkeleton: return "InvalidSkeleton";
    case ErrorCode::ArmTooShort: return "ArmTooShort";
    case ErrorCode::SelfIntersection: return "SelfIntersection";
    case ErrorCode::SmoothingOverlap: return "SmoothingOverlap";
    case ErrorCode::WidthMismatch: return "WidthMismatch";
    case ErrorCode::MisalignedInterface: return "MisalignedInterface";
    case ErrorCode::DanglingPort: return "DanglingPort";
    case ErrorCode::FluxImbalance: return "FluxImbalance";
    case ErrorCode::DisconnectedNetwork: return "DisconnectedNetwork";
    case ErrorCode::NotAcyclic: return "NotAcyclic";
    case ErrorCode::RankDeficient: return "RankDeficient";
    case ErrorCode::MissingScatteringMatrix: return "MissingScatteringMatrix";
    case ErrorCode::IncompatibleData: return "IncompatibleData";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::PointTooCloseToBoundary: return "PointTooCloseToBoundary";
    case ErrorCode::PointOutsideDomain: return "PointOutsideDomain";
    case ErrorCode::OutOfChannel: return "OutOfChannel";
    case ErrorCode::NonPositiveValues: return "NonPositiveValues";
    case ErrorCode::RootSearchFailed: return "RootSearchFailed";
  }
  return "UnknownError";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what),
        code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace stokesnet
