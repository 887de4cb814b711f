#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ltar {

/// Tensor or series dimensions do not agree.
class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Not enough observations for the requested model order / differencing.
class InsufficientDataError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Singular normal equations (fallback disabled) or an imaginary residue
/// above tolerance after an inverse DFT.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A file could not be opened, read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed series or model file. Line and column are 1-based; 0 means
/// "not applicable".
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& source, std::size_t line, std::size_t column,
             const std::string& what)
      : std::runtime_error(format(source, line, column, what)),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  static std::string format(const std::string& source, std::size_t line,
                            std::size_t column, const std::string& what) {
    std::string out = source;
    if (line > 0) {
      out += ":" + std::to_string(line);
      if (column > 0) {
        out += ":" + std::to_string(column);
      }
    }
    return out + ": " + what;
  }

  std::size_t line_;
  std::size_t column_;
};

}  // namespace ltar
