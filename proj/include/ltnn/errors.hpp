#pragma once

#include <stdexcept>
#include <string>

namespace ltnn {

/// Caller supplied something malformed (dimension mismatch, duplicate points, ...).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A text or file could not be parsed. `where()` names the location (line, JSON path).
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& where, const std::string& what)
      : std::runtime_error(where.empty() ? what : where + ": " + what), where_(where) {}
  const std::string& where() const noexcept { return where_; }

 private:
  std::string where_;
};

/// The request is well-formed but exceeds an enumeration cap.
class RefusalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A point was not found in the relative interior of any cell.
class CoverageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ltnn
