#pragma once

#include <stdexcept>
#include <string>

namespace hmpz {

// Exit-code category carried by every library error.
enum class ErrorKind { validation = 1, numerical = 2, resource = 3 };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }
  virtual const char* tag() const noexcept = 0;

 private:
  ErrorKind kind_;
};

class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& what) : Error(ErrorKind::validation, what) {}
  const char* tag() const noexcept override { return "validation"; }
};

class DimensionError : public ValidationError {
 public:
  using ValidationError::ValidationError;
  const char* tag() const noexcept override { return "dimension"; }
};

class MixingError : public ValidationError {
 public:
  MixingError(const std::string& what, double modulus) : ValidationError(what), modulus_(modulus) {}
  double modulus() const noexcept { return modulus_; }
  const char* tag() const noexcept override { return "mixing"; }

 private:
  double modulus_;
};

// Argument outside the region where a closed form or series converges.
class DomainError : public ValidationError {
 public:
  using ValidationError::ValidationError;
  const char* tag() const noexcept override { return "domain"; }
};

class NumericalError : public Error {
 public:
  explicit NumericalError(const std::string& what) : Error(ErrorKind::numerical, what) {}
  const char* tag() const noexcept override { return "numerical"; }
};

class ConvergenceError : public NumericalError {
 public:
  ConvergenceError(const std::string& what, long long needed_terms)
      : NumericalError(what), needed_(needed_terms) {}
  long long needed_terms() const noexcept { return needed_; }
  const char* tag() const noexcept override { return "convergence"; }

 private:
  long long needed_;
};

class TrackingError : public NumericalError {
 public:
  TrackingError(const std::string& what, double n) : NumericalError(what), n_(n) {}
  double at_n() const noexcept { return n_; }
  const char* tag() const noexcept override { return "tracking"; }

 private:
  double n_;
};

class ResourceError : public Error {
 public:
  explicit ResourceError(const std::string& what) : Error(ErrorKind::resource, what) {}
  const char* tag() const noexcept override { return "resource"; }
};

}  // namespace hmpz
