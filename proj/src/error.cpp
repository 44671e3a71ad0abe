#include "nistab/error.hpp"

namespace nistab {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NonSquare: return "NonSquare";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorCode::NotAnEigenvalue: return "NotAnEigenvalue";
    case ErrorCode::SplitAmbiguous: return "SplitAmbiguous";
    case ErrorCode::NotHurwitz: return "NotHurwitz";
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::PoleProximity: return "PoleProximity";
    case ErrorCode::AssumptionA1Violated: return "AssumptionA1Violated";
    case ErrorCode::AssumptionA2Violated: return "AssumptionA2Violated";
    case ErrorCode::InversionFailure: return "InversionFailure";
    case ErrorCode::AntistableBlockPresent: return "AntistableBlockPresent";
    case ErrorCode::NoAntistableEigenvalue: return "NoAntistableEigenvalue";
    case ErrorCode::EmptyGrid: return "EmptyGrid";
    case ErrorCode::RNotPositive: return "RNotPositive";
    case ErrorCode::InvalidEpsilon: return "InvalidEpsilon";
    case ErrorCode::InvalidRange: return "InvalidRange";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace nistab
