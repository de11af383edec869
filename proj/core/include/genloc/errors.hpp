#pragma once

#include <stdexcept>
#include <string>

namespace genloc {

// Every failure raised by the library derives from Error so callers (the CLI
// in particular) can map a whole family onto one exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller-supplied argument outside the documented domain.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Index or parameter outside a table or admissible interval.
class RangeError : public Error {
 public:
  using Error::Error;
};

/// An operation's precondition does not hold for otherwise valid arguments.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Grid or quadrature too coarse for the requested accuracy.
class ResolutionError : public Error {
 public:
  using Error::Error;
};

/// Work or memory budget exceeded.
class ResourceError : public Error {
 public:
  using Error::Error;
};

class NotEllipticError : public Error {
 public:
  using Error::Error;
};

/// The lattice partition construction needs a nonzero center.
class DegenerateCenterError : public Error {
 public:
  using Error::Error;
};

/// Inconsistent run configuration (bad keys, aliasing-prone grids, ...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

class InputError : public Error {
 public:
  using Error::Error;
};

/// A computation was requested before the tables it reads were built.
class DependencyError : public Error {
 public:
  using Error::Error;
};

}  // namespace genloc
