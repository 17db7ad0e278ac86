#pragma once

#include <stdexcept>
#include <string>

namespace pcs {

enum class ErrorCode {
  CompositeDilation,
  InvalidConvention,
  ZeroResidue,
  DomainError,
  DimensionMismatch,
  NotLowpass,
  NotInterpolatory,
  ShapeNotDivisible,
  ShapeMismatch,
  WrongProvenance,
  ParseError,
  IoError,
};

const char* to_string(ErrorCode code) noexcept;

/// Every precondition failure in the library is reported through this type.
/// The message names the violated condition; `code()` lets callers branch.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace pcs
