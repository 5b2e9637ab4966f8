#pragma once

#include <stdexcept>

namespace kb {

// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Evaluation at a removable-but-not-removed singularity.
class SingularityError : public DomainError {
 public:
  using DomainError::DomainError;
};

// Invalid run configuration or violated theorem hypothesis.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// File could not be read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace kb
