#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ogf {

// Error taxonomy mirrored by the CLI exit codes: everything derived from
// DomainError maps to exit 2 (bad arguments / out of domain), everything
// derived from NumericalError maps to exit 3 (a computation refused to
// deliver the requested accuracy or resources).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class PoleError : public DomainError {
 public:
  using DomainError::DomainError;
};

class RangeError : public DomainError {
 public:
  using DomainError::DomainError;
};

class UnsupportedError : public DomainError {
 public:
  using DomainError::DomainError;
};

class NumericalError : public Error {
 public:
  using Error::Error;
};

class QuadratureError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

// Thrown when an evaluation would need more sieve entries than the
// configured cap allows. Carries the offending numbers so callers can
// report how far out of reach the request was.
class MemoryCapError : public NumericalError {
 public:
  MemoryCapError(std::uint64_t required_terms, std::uint64_t cap)
      : NumericalError("required series length " + std::to_string(required_terms) +
                       " exceeds the memory cap of " + std::to_string(cap) + " entries"),
        required_terms_(required_terms),
        cap_(cap) {}

  std::uint64_t required_terms() const { return required_terms_; }
  std::uint64_t cap() const { return cap_; }

 private:
  std::uint64_t required_terms_;
  std::uint64_t cap_;
};

}  // namespace ogf
