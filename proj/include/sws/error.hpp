#ifndef SWS_ERROR_HPP
#define SWS_ERROR_HPP

#include <stdexcept>
#include <string>

namespace sws {

/// Root of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad user input: malformed tensors, configs, files. The CLI maps these to exit code 1.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Failure while running a well-formed request. The CLI maps these to exit code 2.
class RuntimeError : public Error {
 public:
  using Error::Error;
};

class InvalidTensor : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class InvalidConfig : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class InvalidCode : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class ShapeError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class ConfigError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class FormatError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Input file missing or unreadable.
class FileError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class Unsupported : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class ModelError : public RuntimeError {
 public:
  using RuntimeError::RuntimeError;
};

class AccountingError : public RuntimeError {
 public:
  using RuntimeError::RuntimeError;
};

class CompareError : public RuntimeError {
 public:
  using RuntimeError::RuntimeError;
};

class NumericalError : public RuntimeError {
 public:
  using RuntimeError::RuntimeError;
};

/// Output could not be written.
class IoError : public RuntimeError {
 public:
  using RuntimeError::RuntimeError;
};

}  // namespace sws

#endif  // SWS_ERROR_HPP
