#pragma once

#include <stdexcept>
#include <string>

namespace dyson {

// Base for every failure raised by a computation (as opposed to bad input).
class ComputationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ZeroConstantTerm : public ComputationError {
 public:
  ZeroConstantTerm() : ComputationError("series has zero constant term; cannot invert") {}
};

class PoleAtOrigin : public ComputationError {
 public:
  PoleAtOrigin() : ComputationError("pole list contains 0; expected a single simple pole at rho=0") {}
};

class InsufficientLaurentOrder : public ComputationError {
 public:
  InsufficientLaurentOrder(int needed, int available)
      : ComputationError("Laurent data has order " + std::to_string(available) + " but " +
                         std::to_string(needed) + " is required") {}
};

class SingularPoint : public ComputationError {
 public:
  using ComputationError::ComputationError;
};

class DomainError : public ComputationError {
 public:
  using ComputationError::ComputationError;
};

class NoBracket : public ComputationError {
 public:
  using ComputationError::ComputationError;
};

class NoSignChange : public ComputationError {
 public:
  using ComputationError::ComputationError;
};

class InsufficientTerms : public ComputationError {
 public:
  using ComputationError::ComputationError;
};

// Input documents that fail validation. Carries the full aggregated message.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dyson
