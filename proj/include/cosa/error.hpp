#pragma once

#include <stdexcept>
#include <string>

namespace cosa {

enum class ErrorCode {
  InvalidArgument,
  ZeroDispersion,
  LengthMismatch,
  AllZeroWeights,
  SizeMismatch,
  AllZero,
  InvalidK,
  DegenerateRank,
  GroupTooSmall,
  RangeTooLarge,
  DimensionTooSmall,
  Parse,
  Io,
};

const char* to_string(ErrorCode code);

/// Failure raised by the library. The CLI maps InvalidArgument to exit code 1 and the rest to 2.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace cosa
