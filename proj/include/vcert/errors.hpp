#pragma once

#include <stdexcept>
#include <string>

namespace vcert {

/// Base of every error raised by the library. Callers that only need to
/// distinguish "bad input" from "check failed" can catch this one type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or contract-violating input (parse errors, q^T t <= 0, ...).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

class UnboundedInput : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

class BeltSizeViolation : public Error {
 public:
  using Error::Error;
};

class NoIntegerRelation : public Error {
 public:
  using Error::Error;
};

class InputNotParallelotope : public Error {
 public:
  using Error::Error;
};

class NonIntegralImage : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

class RankDeficient : public Error {
 public:
  using Error::Error;
};

class Inconsistent : public Error {
 public:
  using Error::Error;
};

/// Raised when a generator cannot certify its own search bound.
class BoundNotCertified : public Error {
 public:
  using Error::Error;
};

}  // namespace vcert
