#pragma once

#include <stdexcept>
#include <string>

namespace qcorr {

// Three families, mapped by the CLI onto exit codes 2 (input), 3 (physicality)
// and 4 (numerical).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InputError : public Error {
 public:
  using Error::Error;
};

class PhysicalityError : public Error {
 public:
  using Error::Error;
};

class NumericalError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public InputError {
 public:
  using InputError::InputError;
};

class DomainError : public InputError {
 public:
  using InputError::InputError;
};

class ZeroDetuningError : public InputError {
 public:
  ZeroDetuningError() : InputError("detuning must be nonzero") {}
  using InputError::InputError;
};

class ZeroCouplingError : public InputError {
 public:
  ZeroCouplingError() : InputError("coupling g must be nonzero") {}
};

class NonIdenticalQubitsError : public InputError {
 public:
  NonIdenticalQubitsError()
      : InputError("closed-form engine requires identical qubits (omega1 == omega2)") {}
};

class DimensionMismatchError : public InputError {
 public:
  using InputError::InputError;
};

class NotXStateError : public InputError {
 public:
  using InputError::InputError;
};

class GridTooCoarse : public InputError {
 public:
  using InputError::InputError;
};

class InvalidGeometryError : public InputError {
 public:
  using InputError::InputError;
};

class TruncationError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class DegenerateError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class NoPeriodError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace qcorr
