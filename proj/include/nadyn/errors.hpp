#pragma once

#include <stdexcept>
#include <string>

namespace nadyn {

/// Base of every domain error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error("division by zero") {}
  explicit DivisionByZero(const std::string& what) : Error("division by zero: " + what) {}
};

/// A root or factor exists only in an extension the base field does not model.
class Unresolved : public Error {
 public:
  explicit Unresolved(const std::string& what) : Error("unresolved: " + what) {}
};

/// Truncation made a result indistinguishable from zero (or from a type I point).
class PrecisionExhausted : public Error {
 public:
  explicit PrecisionExhausted(const std::string& what) : Error("precision exhausted: " + what) {}
};

class NegativeValuation : public Error {
 public:
  explicit NegativeValuation(const std::string& what) : Error("negative valuation: " + what) {}
};

class CommonFactor : public Error {
 public:
  CommonFactor() : Error("numerator and denominator share a common factor") {}
};

class NotPeriodic : public Error {
 public:
  explicit NotPeriodic(const std::string& what) : Error("not periodic: " + what) {}
};

class DegenerateLimit : public Error {
 public:
  explicit DegenerateLimit(const std::string& what) : Error("degenerate limit: " + what) {}
};

class BoundViolation : public Error {
 public:
  explicit BoundViolation(const std::string& what) : Error("bound violation: " + what) {}
};

class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& what, std::size_t column)
      : Error("syntax error at column " + std::to_string(column) + ": " + what), column_(column) {}
  [[nodiscard]] std::size_t column() const { return column_; }

 private:
  std::size_t column_;
};

class UnknownVariable : public Error {
 public:
  UnknownVariable(const std::string& name, std::size_t column)
      : Error("unknown variable '" + name + "' at column " + std::to_string(column)), column_(column) {}
  [[nodiscard]] std::size_t column() const { return column_; }

 private:
  std::size_t column_;
};

class ExponentDenominatorOverflow : public Error {
 public:
  explicit ExponentDenominatorOverflow(const std::string& what)
      : Error("exponent denominator exceeds max_denominator: " + what) {}
};

}  // namespace nadyn
