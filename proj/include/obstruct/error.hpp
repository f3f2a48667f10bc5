#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace obs {

enum class ErrorCode {
  InvalidInput,
  ShapeMismatch,
  NotAGroup,
  NotAHomomorphism,
  NotSurjective,
  KernelMismatch,
  NotCentral,
  NotSubgroup,
  KernelViolation,
  BaseMismatch,
  CapExceeded,
  Parse,
  Internal,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidInput: return "INVALID_INPUT";
    case ErrorCode::ShapeMismatch: return "SHAPE_MISMATCH";
    case ErrorCode::NotAGroup: return "NOT_A_GROUP";
    case ErrorCode::NotAHomomorphism: return "NOT_A_HOMOMORPHISM";
    case ErrorCode::NotSurjective: return "NOT_SURJECTIVE";
    case ErrorCode::KernelMismatch: return "KERNEL_MISMATCH";
    case ErrorCode::NotCentral: return "NOT_CENTRAL";
    case ErrorCode::NotSubgroup: return "NOT_SUBGROUP";
    case ErrorCode::KernelViolation: return "KERNEL_VIOLATION";
    case ErrorCode::BaseMismatch: return "BASE_MISMATCH";
    case ErrorCode::CapExceeded: return "CAP_EXCEEDED";
    case ErrorCode::Parse: return "PARSE";
    case ErrorCode::Internal: return "INTERNAL";
  }
  return "UNKNOWN";
}

/// Every failure raised by the library carries one of the codes above; the
/// message names the offending witness where there is one.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, ErrorCode code, const std::string& what) {
  if (!cond) fail(code, what);
}

}  // namespace obs
