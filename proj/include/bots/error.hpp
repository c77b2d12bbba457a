#pragma once

#include <stdexcept>
#include <string>

namespace bots {

// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidGraph : public Error {
 public:
  using Error::Error;
};

class UnknownNode : public Error {
 public:
  using Error::Error;
};

class Unreachable : public Error {
 public:
  using Error::Error;
};

class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// A path crosses an arc that is blocked at the time it would be entered.
class PathInfeasible : public Error {
 public:
  using Error::Error;
};

// Every candidate route is blocked.
class NoRoute : public Error {
 public:
  using Error::Error;
};

}  // namespace bots
