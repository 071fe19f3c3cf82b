#pragma once

#include <stdexcept>
#include <string>

namespace latconv {

/// Base class for all errors raised by the library.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Two vectors (or a vector and an ideal) of different dimensions met.
struct DimensionMismatch : Error {
  int lhs_dim, rhs_dim;
  DimensionMismatch(int lhs, int rhs)
      : Error("dimension mismatch: " + std::to_string(lhs) + " vs " + std::to_string(rhs)),
        lhs_dim(lhs), rhs_dim(rhs) {}
};

/// A bounded computation ran out of its configured budget.  Callers that can
/// degrade gracefully catch this and report an inconclusive result; a wrong
/// answer is never returned instead.
struct BudgetExceeded : Error {
  explicit BudgetExceeded(const std::string& what) : Error(what) {}
};

/// Text input (spec file, set expression, term expression) failed to parse.
struct ParseError : Error {
  int line, column;
  ParseError(const std::string& what, int line_, int column_ = 0)
      : Error("line " + std::to_string(line_) +
              (column_ > 0 ? ":" + std::to_string(column_) : "") + ": " + what),
        line(line_), column(column_) {}
};

}  // namespace latconv
