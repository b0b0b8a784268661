#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace matineq {

enum class ErrorKind {
  NonSquare,
  NotNumericallyHermitian,
  NoConvergence,
  SpectrumOutsideDomain,
  NotPositiveDefinite,
  DimensionMismatch,
  ParameterOutOfRange,
  DomainMismatch,
  NonPositiveFunction,
  DegenerateInterval,
  DegenerateWeight,
  NonFiniteSample,
  LengthMismatch,
  UnknownId,
  InvalidArgument,
  MalformedInput,
};

std::string_view to_string(ErrorKind kind);

// Every failure raised by the library carries one of the kinds above so that
// callers (tests, the CLI) can branch on it without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace matineq
