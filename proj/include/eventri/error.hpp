#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace eventri {

enum class ErrorKind {
  Syntax,
  InvolutionViolation,
  UngluedFacet,
  SelfGluing,
  DisconnectedDualGraph,
  DimensionTooSmall,
  IndexOutOfRange,
  UnsupportedDimension,
  NotEven,
  NonTrivialImage,
  WeightsNotZeroOne,
  InadmissibleSolution,
  RelatorViolation,
  PreconditionViolation,
  NonSquare,
  NotSymmetric,
  NonzeroDiagonal,
  NonsingularInput,
  MalformedPath,
  InternalError,
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Syntax: return "Syntax";
    case ErrorKind::InvolutionViolation: return "InvolutionViolation";
    case ErrorKind::UngluedFacet: return "UngluedFacet";
    case ErrorKind::SelfGluing: return "SelfGluing";
    case ErrorKind::DisconnectedDualGraph: return "DisconnectedDualGraph";
    case ErrorKind::DimensionTooSmall: return "DimensionTooSmall";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::UnsupportedDimension: return "UnsupportedDimension";
    case ErrorKind::NotEven: return "NotEven";
    case ErrorKind::NonTrivialImage: return "NonTrivialImage";
    case ErrorKind::WeightsNotZeroOne: return "WeightsNotZeroOne";
    case ErrorKind::InadmissibleSolution: return "InadmissibleSolution";
    case ErrorKind::RelatorViolation: return "RelatorViolation";
    case ErrorKind::PreconditionViolation: return "PreconditionViolation";
    case ErrorKind::NonSquare: return "NonSquare";
    case ErrorKind::NotSymmetric: return "NotSymmetric";
    case ErrorKind::NonzeroDiagonal: return "NonzeroDiagonal";
    case ErrorKind::NonsingularInput: return "NonsingularInput";
    case ErrorKind::MalformedPath: return "MalformedPath";
    case ErrorKind::InternalError: return "InternalError";
  }
  return "Unknown";
}

/// Every failure raised by the library carries a machine-readable kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace eventri
