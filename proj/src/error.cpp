#include "matineq/error.hpp"

namespace matineq {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonSquare: return "NonSquare";
    case ErrorKind::NotNumericallyHermitian: return "NotNumericallyHermitian";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::SpectrumOutsideDomain: return "SpectrumOutsideDomain";
    case ErrorKind::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::ParameterOutOfRange: return "ParameterOutOfRange";
    case ErrorKind::DomainMismatch: return "DomainMismatch";
    case ErrorKind::NonPositiveFunction: return "NonPositiveFunction";
    case ErrorKind::DegenerateInterval: return "DegenerateInterval";
    case ErrorKind::DegenerateWeight: return "DegenerateWeight";
    case ErrorKind::NonFiniteSample: return "NonFiniteSample";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::UnknownId: return "UnknownId";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::MalformedInput: return "MalformedInput";
  }
  return "Unknown";
}

}  // namespace matineq
