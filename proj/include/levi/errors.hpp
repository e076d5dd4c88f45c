#pragma once

#include <stdexcept>
#include <string>

namespace levi {

/// Root of every error raised by the library. `exit_code()` is the process
/// status the CLI reports for it.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual int exit_code() const noexcept { return 1; }
};

/// Malformed input: bad parameters, schema violations, invalid measures.
class InputError : public Error {
 public:
  using Error::Error;
  int exit_code() const noexcept override { return 2; }
};

/// A law is outside the domain of an integral mapping.
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what, double y = 0.0)
      : Error(what), y_(y) {}
  double y() const noexcept { return y_; }
  int exit_code() const noexcept override { return 3; }

 private:
  double y_;
};

/// Quadrature could not reach the requested tolerance.
class NonConvergenceError : public Error {
 public:
  NonConvergenceError(const std::string& what, double achieved_error)
      : Error(what + " (achieved error estimate " + std::to_string(achieved_error) + ")"),
        achieved_error_(achieved_error) {}
  double achieved_error() const noexcept { return achieved_error_; }
  int exit_code() const noexcept override { return 4; }

 private:
  double achieved_error_;
};

/// The operation is not defined for the given representation.
class UnsupportedError : public Error {
 public:
  using Error::Error;
  int exit_code() const noexcept override { return 2; }
};

}  // namespace levi
