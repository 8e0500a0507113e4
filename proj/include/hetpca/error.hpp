#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hetpca {

enum class ErrorCode {
  EmptyMixture,
  ProportionSumInvalid,
  NonpositiveProportion,
  NegativeVariance,
  InvalidProportions,
  InvalidModelParams,
  NonpositiveScale,
  PoleEvaluation,
  NoRoot,
  NoTransition,
  ZeroTrueSubspace,
  InvalidArgument,
  InvalidConfig,
  Io,
};

std::string_view to_string(ErrorCode code) noexcept;

// Every failure raised by the library carries one of the codes above so
// callers (CLI, Python bindings) can map it without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace hetpca
