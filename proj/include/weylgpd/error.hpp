#ifndef WEYLGPD_ERROR_HPP
#define WEYLGPD_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace weylgpd {

enum class ErrorCode {
  SingularBasis,
  ZeroCovector,
  DimensionMismatch,
  NonSquare,
  InvalidMatrix,
  InvalidTable,
  BudgetExceeded,
  OnHyperplane,
  OutsideCone,
  NotSimplicial,
  WallOnBoundary,
  NotCrystallographicAt,
  Unreachable,
  NotSimplyConnected,
  AxiomViolation,
  Mismatch,
  RootNotInSystem,
  NotReducible,
  Unsupported,
  ParseError,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::SingularBasis: return "SingularBasis";
    case ErrorCode::ZeroCovector: return "ZeroCovector";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NonSquare: return "NonSquare";
    case ErrorCode::InvalidMatrix: return "InvalidMatrix";
    case ErrorCode::InvalidTable: return "InvalidTable";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::OnHyperplane: return "OnHyperplane";
    case ErrorCode::OutsideCone: return "OutsideCone";
    case ErrorCode::NotSimplicial: return "NotSimplicial";
    case ErrorCode::WallOnBoundary: return "WallOnBoundary";
    case ErrorCode::NotCrystallographicAt: return "NotCrystallographicAt";
    case ErrorCode::Unreachable: return "Unreachable";
    case ErrorCode::NotSimplyConnected: return "NotSimplyConnected";
    case ErrorCode::AxiomViolation: return "AxiomViolation";
    case ErrorCode::Mismatch: return "Mismatch";
    case ErrorCode::RootNotInSystem: return "RootNotInSystem";
    case ErrorCode::NotReducible: return "NotReducible";
    case ErrorCode::Unsupported: return "Unsupported";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

/// Every failure raised by the library carries a machine-readable code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace weylgpd

#endif  // WEYLGPD_ERROR_HPP
