#pragma once

#include <stdexcept>
#include <string>

namespace nagcd {

enum class ErrorCode {
  kDomain,         // precondition or argument violation
  kDivisionByZero,
  kNotUnit,
  kNotDistinguished,
  kRetryExceeded,  // generic sampling gave up
  kIndeterminate,  // undecidable at the retained precision
  kParse,
};

inline const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::kDomain: return "domain";
    case ErrorCode::kDivisionByZero: return "division_by_zero";
    case ErrorCode::kNotUnit: return "not_unit";
    case ErrorCode::kNotDistinguished: return "not_distinguished";
    case ErrorCode::kRetryExceeded: return "retry_exceeded";
    case ErrorCode::kIndeterminate: return "indeterminate";
    case ErrorCode::kParse: return "parse";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace nagcd
