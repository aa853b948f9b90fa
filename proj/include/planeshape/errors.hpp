#pragma once

#include <stdexcept>
#include <string>

namespace planeshape {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Mismatched or degenerate grid geometry, invalid arguments.
class GeometryError : public Error {
 public:
  using Error::Error;
};

// A set was carried outside the grid bounds in strict mode.
class BoundsError : public Error {
 public:
  using Error::Error;
};

// Operation undefined on the empty set (Hausdorff distance, attractor iterates).
class EmptySetError : public Error {
 public:
  using Error::Error;
};

// A hypothesis of the operation does not hold (non-contractive system,
// non-repelling origin, disconnected continuum, ...).
class HypothesisError : public Error {
 public:
  using Error::Error;
};

// Iteration failed to settle, or a structural invariant of the iteration broke.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

// Evidence does not support a verdict (unstable multi-resolution counts).
class InconclusiveError : public Error {
 public:
  using Error::Error;
};

// Unreadable or malformed file, failed write.
class IoError : public Error {
 public:
  using Error::Error;
};

// Malformed configuration; `line` is 0 when no source position is known.
class ConfigError : public Error {
 public:
  ConfigError(const std::string& what, int line = 0)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

}  // namespace planeshape
