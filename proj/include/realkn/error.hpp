#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace realkn {

enum class ErrorCode {
  DimensionMismatch,
  Overflow,
  NotUnimodular,
  NotPrimitive,
  NotOrthogonal,
  UnknownGenerator,
  PartialPresentation,
  RankMismatch,
  UnsupportedDimension,
  RankTooLarge,
  BoundInsufficient,
  NotStrictlyConvex,
  InvalidSpec,
  NotAFace,
  InvalidInput,
};

std::string_view to_string(ErrorCode code);

/// Every domain failure in the library is reported through this type; the
/// code lets callers (the CLI in particular) dispatch without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace realkn
