#pragma once

#include <stdexcept>
#include <string>

namespace rnl {

/// Base class for all errors thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// An input value violated a documented invariant (bad distribution,
/// non-normalized state, ...). The message names the violated invariant.
struct ValidationError : Error {
  using Error::Error;
};

/// An argument lies outside the mathematical domain of the operation
/// (negative length, superluminal frame, empty range, zero sample count).
struct DomainError : Error {
  using Error::Error;
};

/// The configuration is syntactically fine but not covered by the model
/// (mixed u/d markings, mixtures of states with cross terms).
struct UnsupportedError : Error {
  using Error::Error;
};

/// Conditioning on an outcome of probability zero.
struct DegenerateConditioningError : Error {
  using Error::Error;
};

}  // namespace rnl
