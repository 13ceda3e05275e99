#pragma once

#include <stdexcept>
#include <string>

namespace quasihyper {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed text or JSON input.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// A precondition on the arguments of an operation does not hold.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// The requested evaluation would exceed the configured work or memory budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace quasihyper
