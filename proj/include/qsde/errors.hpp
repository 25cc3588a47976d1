#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qsde {

// Base class for all recoverable engine errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct OverflowError : Error {
  using Error::Error;
};

struct ModeMismatch : Error {
  using Error::Error;
};

struct DegreeOverflow : Error {
  using Error::Error;
};

struct DimensionMismatch : Error {
  using Error::Error;
};

struct NotAGradient : Error {
  using Error::Error;
};

struct NotConservative : Error {
  using Error::Error;
};

struct NotHermitianizable : Error {
  using Error::Error;
};

struct NotCompletable : Error {
  using Error::Error;
};

struct InvalidS : Error {
  using Error::Error;
};

struct CapRequired : Error {
  using Error::Error;
};

struct DegreeTooHighForDim : Error {
  using Error::Error;
};

// Parse-time diagnostics carry a character offset into the source text.
struct SyntaxError : Error {
  std::size_t position;
  SyntaxError(const std::string& msg, std::size_t pos = std::string::npos)
      : Error(msg), position(pos) {}
};

struct UnknownVariable : SyntaxError {
  using SyntaxError::SyntaxError;
};

struct BadExponent : SyntaxError {
  using SyntaxError::SyntaxError;
};

// Raised when an identity the theory guarantees fails to hold at runtime.
// Always indicates an implementation bug, never a property of the input model.
struct InternalContractViolation : std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace qsde
