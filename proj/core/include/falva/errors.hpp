#pragma once

#include <stdexcept>
#include <string>

namespace falva {

/// Invalid domain input: grid bounds, operator orders, config fields.
class DomainError : public std::invalid_argument {
 public:
  explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

/// A stated precondition of an operation does not hold for the given data
/// (boundary values, grid sharing, structural assumptions).
class PreconditionError : public std::invalid_argument {
 public:
  explicit PreconditionError(const std::string& what) : std::invalid_argument(what) {}
};

/// Two sampled functions that must live on one grid do not.
class GridMismatchError : public PreconditionError {
 public:
  explicit GridMismatchError(const std::string& what) : PreconditionError(what) {}
};

/// Non-finite values or other breakdowns encountered during computation.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace falva
