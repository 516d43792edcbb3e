#pragma once

#include <stdexcept>
#include <string>

namespace mirs {

// Base class for all library errors. Catch this to handle any failure
// raised by the library; catch the specific types for finer dispatch.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Input is structurally valid but numerically unusable (overflow before
// renormalization engages, non-finite entries reaching an operation that
// cannot absorb them, ...).
class DegenerateInput : public Error {
 public:
  using Error::Error;
};

// A constructed matrix would exceed the configured maximum dimension.
class SizeOverflow : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

// Raised by the sequence engine in exact-or-fail mode when the product
// frontier outgrows the configured state capacity.
class CapacityExceeded : public Error {
 public:
  using Error::Error;
};

class IndexOutOfRange : public Error {
 public:
  using Error::Error;
};

// An upper-bound extension was requested but the input sequence carries
// no exactly certified prefix to extend from.
class InsufficientPrefix : public Error {
 public:
  using Error::Error;
};

class AlphaOutOfRange : public Error {
 public:
  using Error::Error;
};

// Continued-fraction depth too small for the requested precision target.
class DepthTooShallow : public Error {
 public:
  using Error::Error;
};

// The stored high-precision angle cannot support the requested range of
// sine evaluations within tolerance.
class PrecisionExhausted : public Error {
 public:
  using Error::Error;
};

// cos(n*theta) is too close to 1 for the closed-form witness expression.
class DegenerateAngle : public Error {
 public:
  using Error::Error;
};

class NoEligibleDenominators : public Error {
 public:
  using Error::Error;
};

// Diagonal blocks of a coupled family exceed the contractivity bound that
// exact subadditivity of the coupling sequence requires.
class PreconditionNormExceeded : public Error {
 public:
  using Error::Error;
};

class WindowTooSmall : public Error {
 public:
  using Error::Error;
};

class InsufficientExactPrefix : public Error {
 public:
  using Error::Error;
};

class HorizonMismatch : public Error {
 public:
  using Error::Error;
};

}  // namespace mirs
