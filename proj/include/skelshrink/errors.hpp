#pragma once

#include <stdexcept>
#include <string>

namespace skelshrink {

// Parameters outside the distribution's domain (negative rates, |mean| > variance, ...).
class ParameterDomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Valid but degenerate parameters for which the requested operation is undefined
// (e.g. recurrences that divide by variance - mean).
class DegenerateParameterError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Coefficient data violating pyramid invariants (parity, dominance).
class MalformedPyramidError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Requested decomposition depth exceeds what the signal length supports.
class LevelOverflowError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Target value outside the attainable range of a solver.
class InfeasibleTargetError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Observation so far out in the tail that posterior integrals underflow.
class ExtremeObservationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input file (PGM/CSV).
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad user-facing arguments (unknown method or signal name, ...).
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace skelshrink
