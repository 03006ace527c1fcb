#pragma once

#include <stdexcept>
#include <string>

namespace grig {

// Base of every error raised by the library. The CLI maps the concrete
// types onto exit codes, so keep the hierarchy flat.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class AlphabetViolation : public Error {
 public:
  using Error::Error;
};

class NotDecidable : public Error {
 public:
  using Error::Error;
};

class Diverges : public Error {
 public:
  using Error::Error;
};

class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

class ValidityExceeded : public Error {
 public:
  using Error::Error;
};

class ContextMismatch : public Error {
 public:
  using Error::Error;
};

class RangeExceeded : public Error {
 public:
  using Error::Error;
};

class EmptyInput : public Error {
 public:
  using Error::Error;
};

}  // namespace grig
