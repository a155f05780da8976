#pragma once

#include <stdexcept>
#include <string>

namespace chromatope {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A dimension or level outside what a constructor supports.
class DimensionUnsupported : public Error {
 public:
  using Error::Error;
};

/// A parameter violates an operation's precondition.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Two fields that must share a sampling grid do not.
class GridMismatch : public Error {
 public:
  using Error::Error;
};

/// A fiber through a convex body has no upper or lower bound.
class UnboundedFiber : public Error {
 public:
  using Error::Error;
};

/// An internal consistency check on a face lattice or net failed.
class LatticeInconsistent : public Error {
 public:
  using Error::Error;
};

/// Reading or writing a file failed.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace chromatope
