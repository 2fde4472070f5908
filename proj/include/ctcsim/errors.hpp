#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ctcsim {

// Base class for every error raised by the library. The CLI maps the
// ValidationError branch to exit code 2 and the ProtocolError branch to 3.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class NormalizationError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class ProtocolError : public Error {
 public:
  using Error::Error;
};

// The spectral solve found no density matrix in the eigenvalue-1 space.
// Existence is guaranteed for CPTP maps, so this always means numerical trouble.
class NoFixedPointNumerical : public ProtocolError {
 public:
  using ProtocolError::ProtocolError;
};

class NonUniqueFixedPoint : public ProtocolError {
 public:
  NonUniqueFixedPoint(const std::string& what, std::size_t fixed_space_dim)
      : ProtocolError(what), fixed_space_dim_(fixed_space_dim) {}

  std::size_t fixed_space_dim() const noexcept { return fixed_space_dim_; }

 private:
  std::size_t fixed_space_dim_;
};

class Condition2Exhausted : public ProtocolError {
 public:
  using ProtocolError::ProtocolError;
};

class DegenerateSuperposition : public ProtocolError {
 public:
  using ProtocolError::ProtocolError;
};

class PurityLoss : public ProtocolError {
 public:
  using ProtocolError::ProtocolError;
};

}  // namespace ctcsim
