#include "dyadic/error.hpp"

namespace dyadic {

std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::AncestorAboveRoot: return "AncestorAboveRoot";
    case Errc::IntervalTooFine: return "IntervalTooFine";
    case Errc::BadQuantile: return "BadQuantile";
    case Errc::AdmissibilityViolation: return "AdmissibilityViolation";
    case Errc::DepthMismatch: return "DepthMismatch";
    case Errc::DepthTooLarge: return "DepthTooLarge";
    case Errc::ZeroFunction: return "ZeroFunction";
    case Errc::NonpositiveWeight: return "NonpositiveWeight";
    case Errc::BadExponent: return "BadExponent";
    case Errc::NoConvergence: return "NoConvergence";
    case Errc::DegenerateDomination: return "DegenerateDomination";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::ParseError: return "ParseError";
  }
  return "Unknown";
}

bool is_computation_error(Errc code) {
  return code == Errc::NoConvergence || code == Errc::DegenerateDomination;
}

Error::Error(Errc code, const std::string& what)
    : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace dyadic
