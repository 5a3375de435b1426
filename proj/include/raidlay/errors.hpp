#pragma once

#include <stdexcept>
#include <string>

namespace raidlay {

// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Disk count below the minimum a generator or search supports.
class UnsupportedSize : public Error {
public:
  using Error::Error;
};

// A cell that XORs a block with itself (or is otherwise empty).
class DegenerateCell : public Error {
public:
  using Error::Error;
};

// Block index outside the declared block count.
class IndexOutOfRange : public Error {
public:
  using Error::Error;
};

// Layout document that does not conform to the grammar.
class ParseError : public Error {
public:
  ParseError(int line, int column, const std::string& what)
      : Error("line " + std::to_string(line) + ", col " + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

private:
  int line_;
  int column_;
};

// Requested block cannot be reconstructed from the surviving cells.
class NotRecoverable : public Error {
public:
  using Error::Error;
};

// Failure count outside [0, n_disks].
class InvalidFailureCount : public Error {
public:
  using Error::Error;
};

// Exhaustive scenario enumeration refused; disk count exceeds the guard.
class TooLargeForExact : public Error {
public:
  using Error::Error;
};

// k-out-of-n parameters with k > n.
class InvalidKooN : public Error {
public:
  using Error::Error;
};

// Path set unusable for parallel-series evaluation.
class InvalidStructure : public Error {
public:
  using Error::Error;
};

// Negative or non-ascending mission times.
class InvalidTime : public Error {
public:
  using Error::Error;
};

// Monte Carlo called with zero trials.
class InvalidTrials : public Error {
public:
  using Error::Error;
};

}  // namespace raidlay
