#pragma once

#include <stdexcept>
#include <string>

namespace splitred {

// Bad caller input: maps to CLI exit status 1.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Curve model is not a usable genus-2 model (degree, squarefreeness).
class ModelRejected : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

// Operation called outside its domain (e.g. a bad prime for point counting).
class PreconditionError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

// Parameter outside the supported enumeration range.
class UnsupportedError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

// An identity that must hold mathematically failed: always a bug signal. CLI exit status 2.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace splitred
