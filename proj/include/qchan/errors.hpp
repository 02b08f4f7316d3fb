#pragma once

#include <stdexcept>
#include <string>

namespace qchan {

/// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Incompatible matrix or channel dimensions.
struct DimensionError : Error {
  using Error::Error;
};

/// An operation was called with input violating its contract
/// (e.g. a non-Hermitian matrix passed to a PSD test).
struct ContractError : Error {
  using Error::Error;
};

/// A matrix claimed to be a Choi matrix of a CP map is not PSD.
struct NotAChannelError : Error {
  double offending_eigenvalue;
  NotAChannelError(const std::string& msg, double eigenvalue)
      : Error(msg), offending_eigenvalue(eigenvalue) {}
};

/// The operation is only defined for a class of channels the input
/// does not belong to (e.g. multiplicative domain of a non-unital map).
struct UnsupportedPreconditionError : Error {
  using Error::Error;
};

/// A mathematically guaranteed invariant failed numerically.
struct InternalInvariantError : Error {
  using Error::Error;
};

/// Peripheral and non-peripheral spectrum too close to separate reliably.
struct IllConditionedSpectrumError : Error {
  using Error::Error;
};

/// Invalid parameters passed to a channel family constructor.
struct ConstructionError : Error {
  using Error::Error;
};

}  // namespace qchan
