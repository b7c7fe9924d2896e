// Copyright 2026 the lpwpd authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef LPWPD_ERRORS_H_
#define LPWPD_ERRORS_H_

#include <stdexcept>
#include <string>

namespace lpwpd {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller handed us something malformed (shapes, NaN audio, bad files, ...).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

// A configuration value is out of its documented range.
class InvalidConfig : public Error {
 public:
  using Error::Error;
};

// Two otherwise valid objects do not belong together (bin counts, rates).
class ConfigMismatch : public Error {
 public:
  using Error::Error;
};

// Weight vector with nonpositive or nonfinite entries.
class InvalidWeight : public Error {
 public:
  using Error::Error;
};

// Noise mask selects no frames.
class InvalidMask : public Error {
 public:
  using Error::Error;
};

// Numeric failures raised by the solvers. The per-bin driver treats the
// data-degeneracy subset as recoverable (fall back to the reference channel)
// and everything else as a hard failure.
class SolverError : public Error {
 public:
  using Error::Error;
};

class NotPositiveDefinite : public SolverError {
 public:
  using SolverError::SolverError;
};

class DegenerateReference : public SolverError {
 public:
  using SolverError::SolverError;
};

class DegenerateConstraint : public SolverError {
 public:
  using SolverError::SolverError;
};

class ConvergenceFailure : public SolverError {
 public:
  using SolverError::SolverError;
};

}  // namespace lpwpd

#endif  // LPWPD_ERRORS_H_
