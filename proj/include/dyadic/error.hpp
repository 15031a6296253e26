#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dyadic {

enum class Errc {
  AncestorAboveRoot,
  IntervalTooFine,
  BadQuantile,
  AdmissibilityViolation,
  DepthMismatch,
  DepthTooLarge,
  ZeroFunction,
  NonpositiveWeight,
  BadExponent,
  NoConvergence,
  DegenerateDomination,
  InvalidArgument,
  ParseError,
};

std::string_view errc_name(Errc code);

// Computation errors (as opposed to input validation errors) map to a
// different CLI exit code.
bool is_computation_error(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what);

  Errc code() const noexcept { return code_; }
  std::string_view name() const { return errc_name(code_); }

 private:
  Errc code_;
};

[[noreturn]] void fail(Errc code, const std::string& what);

}  // namespace dyadic
