#pragma once

#include <stdexcept>
#include <string>

namespace ctkit {

/// Base class for every failure raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(int line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

enum class GroupErrorKind { NotAssociative, NoIdentity, NoInverse, NotPPower, UnknownName, TooLarge, NotNormal, Abelian, Malformed };

const char* to_string(GroupErrorKind kind);

class GroupError : public Error {
 public:
  GroupError(GroupErrorKind kind, const std::string& detail)
      : Error(std::string(to_string(kind)) + ": " + detail), kind_(kind) {}
  GroupErrorKind kind() const { return kind_; }

 private:
  GroupErrorKind kind_;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

class PrecisionExhausted : public Error {
 public:
  using Error::Error;
};

class UnsupportedDegree : public Error {
 public:
  using Error::Error;
};

class NotNilpotent : public Error {
 public:
  using Error::Error;
};

class GenerationFailed : public Error {
 public:
  using Error::Error;
};

/// A theorem being exercised failed on valid input. Never caught and ignored.
class InternalContradiction : public Error {
 public:
  using Error::Error;
};

}  // namespace ctkit
