#pragma once

#include <stdexcept>
#include <string>

namespace curlam {

// Base class for every error thrown by the library.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed configuration / CLI usage. Mapped to process exit code 2.
struct ConfigError : Error {
  using Error::Error;
};

// A numerical precondition failed (singular point, lambda = 0 where a
// division is required, force-free or Helmholtz check failures, ...).
// Mapped to process exit code 3.
struct PreconditionError : Error {
  using Error::Error;
};

// Kernel evaluated exactly at its singularity.
struct SingularPointError : PreconditionError {
  using PreconditionError::PreconditionError;
};

// The Neumann data violate the solvability (compatibility) condition.
struct CompatibilityError : PreconditionError {
  using PreconditionError::PreconditionError;
};

// File I/O failures. Mapped to process exit code 3.
struct IoError : Error {
  using Error::Error;
};

}  // namespace curlam
