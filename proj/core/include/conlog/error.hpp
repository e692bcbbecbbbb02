#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace conlog {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An operand has the wrong sort (object side vs attribute side, or a
/// formula sort clash).
class SortError : public Error {
 public:
  using Error::Error;
};

/// Bit lengths or matrix shapes disagree with the ambient context.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Malformed concrete syntax. `line` and `column` are 1-based; 0 means unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error(format(what, line, column)), line_(line), column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  static std::string format(const std::string& what, std::size_t line,
                            std::size_t column) {
    std::string out;
    if (line > 0) out += "line " + std::to_string(line) + ": ";
    if (column > 0) out += "column " + std::to_string(column) + ": ";
    return out + what;
  }

  std::size_t line_;
  std::size_t column_;
};

/// A formula uses a modality that is not part of the signature in play.
class SignatureError : public Error {
 public:
  using Error::Error;
};

/// A variable of the formula has no value in the valuation.
class ValuationError : public Error {
 public:
  using Error::Error;
};

/// A frame violates its structural invariants (empty carriers, a relation
/// that should be the converse of another and is not, ...).
class FrameError : public Error {
 public:
  using Error::Error;
};

/// Exhaustive enumeration would exceed the configured budget. The check is
/// refused rather than approximated.
class BudgetExceeded : public Error {
 public:
  /// `exponent` is log2 of the number of assignments the check needs.
  BudgetExceeded(std::size_t exponent, std::uint64_t budget)
      : Error(describe(exponent, budget)), exponent_(exponent), budget_(budget) {}

  std::size_t exponent() const { return exponent_; }
  std::uint64_t budget() const { return budget_; }

 private:
  static std::string describe(std::size_t exponent, std::uint64_t budget) {
    std::string count = "2^" + std::to_string(exponent);
    if (exponent < 64) {
      count += " = " + std::to_string(std::uint64_t{1} << exponent);
    }
    return "refused: check needs " + count + " assignments, budget is " +
           std::to_string(budget);
  }

  std::size_t exponent_;
  std::uint64_t budget_;
};

/// A concept list does not form a lattice (missing meet/join).
class LatticeError : public Error {
 public:
  using Error::Error;
};

/// Two computations that must agree by theory disagreed.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace conlog
