#pragma once

#include <stdexcept>
#include <string>

namespace detequiv {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error("division by zero") {}
};

class FieldMismatch : public Error {
 public:
  FieldMismatch() : Error("operands belong to different fields") {}
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class IndexOutOfRange : public Error {
 public:
  using Error::Error;
};

class LengthMismatch : public Error {
 public:
  using Error::Error;
};

class GaugeZero : public Error {
 public:
  explicit GaugeZero(std::size_t index)
      : Error("gauge value at index " + std::to_string(index) + " is zero"),
        index(index) {}
  std::size_t index;
};

class LabelMismatch : public Error {
 public:
  LabelMismatch() : Error("kernels are defined on different label sets") {}
};

/// Raised for arguments that violate an operation's documented precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

}  // namespace detequiv
