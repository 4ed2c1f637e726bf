#pragma once

#include <stdexcept>
#include <string>

namespace surgeflow {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or out-of-range caller input (bad dimensions, non-metric
/// distances, masses that do not sum to one, ...).
class InputError : public Error {
 public:
  using Error::Error;
};

/// A flow whose row or column sums do not match its endpoints. Kept distinct
/// from "valid but not optimal", which is reported, not thrown.
class InvalidFlowError : public InputError {
 public:
  using InputError::InputError;
};

/// A precondition on a mathematical object was violated, e.g. a matching
/// passed in as welfare-maximizing is not.
class ContractViolation : public Error {
 public:
  using Error::Error;
};

/// The requested operation is not supported for this input, e.g. a hold step
/// on a metric with some distance below one.
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

class SizeLimitError : public Error {
 public:
  using Error::Error;
};

}  // namespace surgeflow
