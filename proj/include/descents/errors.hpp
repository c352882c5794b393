#pragma once

#include <stdexcept>
#include <string>

namespace descents {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnknownStatistic : public Error {
 public:
  using Error::Error;
};

/// A request exceeded the configured size budget (table size, oracle objects).
class ResourceBudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// Two independent computations of the same quantity disagreed.
class ConsistencyFailure : public Error {
 public:
  using Error::Error;
};

class InvalidCycleType : public Error {
 public:
  using Error::Error;
};

/// A transition kernel produced a negative or non-unit-sum row on its reachable support.
class KernelInvalid : public Error {
 public:
  using Error::Error;
};

/// The one-step drift of a kernel is not affine in the state.
class DriftNotAffine : public Error {
 public:
  using Error::Error;
};

class CatalogMiss : public Error {
 public:
  using Error::Error;
};

}  // namespace descents
