#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hurwitz {

enum class ErrorCode {
  // valued_field
  AllTermsTruncated,
  NotPrincipalUnit,
  BadConductor,
  BadLevel,
  PrecisionExhausted,
  // char_p_diff
  ZeroInput,
  UnsplitFactor,
  FieldMismatch,
  // hurwitz_tree
  MalformedTree,
  UnknownVertex,
  UnknownEdge,
  InvalidTree,
  // realizability
  IndexMismatch,
  NotAdapted,
  BudgetExceeded,
  UnsupportedShape,
  // theorems
  PreconditionFailed,
  // io
  SyntaxError,
  DuplicateId,
  DanglingEdge,
  OutOfRange,
  InvalidArgument,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Raised when a polynomial does not split over the working field. `degree`
/// is the extension degree (over the current field) that splits it.
class UnsplitFactorError : public Error {
 public:
  UnsplitFactorError(unsigned degree, const std::string& what)
      : Error(ErrorCode::UnsplitFactor, what), degree_(degree) {}

  unsigned degree() const noexcept { return degree_; }

 private:
  unsigned degree_;
};

}  // namespace hurwitz
