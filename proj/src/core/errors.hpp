#pragma once

#include <stdexcept>
#include <string>

namespace sdwave {

enum class ErrorCode {
  InvalidArgument,
  Domain,
  DivergentNorm,
  DivergentTail,
  MaxDepthExceeded,
  StiffnessGuard,
  NonPositiveValue,
  InsufficientPoints,
  Config,
  Io,
};

/// Base of every exception thrown by the core. The C layer maps `code()`
/// onto its integer error codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace sdwave
