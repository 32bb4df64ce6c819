#pragma once

#include <stdexcept>
#include <string>

namespace ktrp {

// Base of every error raised by the library. The CLI maps the concrete
// subclasses onto its exit-code contract.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidDensity : public Error {
 public:
  using Error::Error;
};

// Parameter outside the mathematical domain of an operation (alpha < 1, beta = 0, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

class InvalidFunction : public Error {
 public:
  using Error::Error;
};

class InvalidTour : public Error {
 public:
  using Error::Error;
};

// Exact oracle asked to solve an instance larger than its enumeration budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

class Infeasible : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace ktrp
