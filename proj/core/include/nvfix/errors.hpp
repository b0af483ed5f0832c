#pragma once

#include <stdexcept>
#include <string>

namespace nvfix {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed textual or JSON input.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Input violates a documented precondition (wrong domain, bad sizes, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class NotSplit : public Error {
 public:
  using Error::Error;
};

/// A fixed point lies on the boundary of the region.
class NotAdmissible : public Error {
 public:
  using Error::Error;
};

class MonodromyMismatch : public Error {
 public:
  using Error::Error;
};

class DistinctnessBroken : public Error {
 public:
  using Error::Error;
};

class NoLiftExists : public Error {
 public:
  using Error::Error;
};

/// A factor still has a non-isolated (interval) fixed point set.
class Degenerate : public Error {
 public:
  using Error::Error;
};

}  // namespace nvfix
