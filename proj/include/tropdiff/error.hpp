#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tropdiff {

enum class ErrorCode {
  InvalidArgument,
  BackendMismatch,
  DivisionByZero,
  ZeroInput,
  NegativeValuation,
  NonIntegralExponent,
  TruncationExhausted,
  TruncationAmbiguous,
  MissingVariable,
  InvalidRule,
  InvalidWindow,
  BadBase,
  TrivialBackend,
  NotAClassicalSolution,
  SyntaxError,
  ZetaUnavailable,
  UnknownVariable,
};

const char* to_string(ErrorCode code);

/// All library failures are reported through this type; `code()` is stable,
/// the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t position, const std::string& what)
      : Error(ErrorCode::SyntaxError, "at offset " + std::to_string(position) + ": " + what),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace tropdiff
