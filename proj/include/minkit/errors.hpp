#pragma once

#include <stdexcept>
#include <string>

namespace minkit {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotHermitian : Error {
  using Error::Error;
};

struct NotPSD : Error {
  using Error::Error;
};

struct NotUnitTrace : Error {
  using Error::Error;
};

struct NotUnitary : Error {
  using Error::Error;
};

struct NoConvergence : Error {
  using Error::Error;
};

struct DimensionMismatch : Error {
  using Error::Error;
};

// Requested operation only exists for a specific subsystem dimension.
struct WrongDimension : Error {
  using Error::Error;
};

struct InvalidDimension : Error {
  using Error::Error;
};

struct InvalidSchmidt : Error {
  using Error::Error;
};

struct InvalidRank : Error {
  using Error::Error;
};

struct OutOfRange : Error {
  using Error::Error;
};

struct ParseError : Error {
  using Error::Error;
};

}  // namespace minkit
