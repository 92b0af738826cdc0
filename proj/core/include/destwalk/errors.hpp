// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace destwalk {

// Base class for all destwalk errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Dimension is zero, mismatched, or unsupported by the operation.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// The difference vector has zero norm: no movement objective exists.
class AtDestinationError : public Error {
 public:
  using Error::Error;
};

// A frame component with positive weight fell below the singularity floor.
// The step loop recovers by resampling the frame.
class SingularComponentError : public Error {
 public:
  using Error::Error;
};

// Too few samples to carry out the requested estimate.
class InsufficientDataError : public Error {
 public:
  using Error::Error;
};

// A series has zero variance where a correlation is requested.
class DegenerateSeriesError : public Error {
 public:
  using Error::Error;
};

// Argument lies outside the support (or asymptotic regime) of a law.
class OutOfSupportError : public Error {
 public:
  using Error::Error;
};

// Invalid run configuration; the message names the offending key.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace destwalk
