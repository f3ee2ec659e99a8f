#include "hurwitz/error.hpp"

namespace hurwitz {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::AllTermsTruncated: return "AllTermsTruncated";
    case ErrorCode::NotPrincipalUnit: return "NotPrincipalUnit";
    case ErrorCode::BadConductor: return "BadConductor";
    case ErrorCode::BadLevel: return "BadLevel";
    case ErrorCode::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorCode::ZeroInput: return "ZeroInput";
    case ErrorCode::UnsplitFactor: return "UnsplitFactor";
    case ErrorCode::FieldMismatch: return "FieldMismatch";
    case ErrorCode::MalformedTree: return "MalformedTree";
    case ErrorCode::UnknownVertex: return "UnknownVertex";
    case ErrorCode::UnknownEdge: return "UnknownEdge";
    case ErrorCode::InvalidTree: return "InvalidTree";
    case ErrorCode::IndexMismatch: return "IndexMismatch";
    case ErrorCode::NotAdapted: return "NotAdapted";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::UnsupportedShape: return "UnsupportedShape";
    case ErrorCode::PreconditionFailed: return "PreconditionFailed";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::DuplicateId: return "DuplicateId";
    case ErrorCode::DanglingEdge: return "DanglingEdge";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace hurwitz
