#pragma once

#include <stdexcept>
#include <string>

namespace bcl {

/// Caller broke a precondition (bad length, out-of-range parameter, non-finite input).
class ContractViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The supervised oracle has no true-negative sample to average over.
class UndefinedOracle : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A rejection loop hit its proposal cap.
class SamplingFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A computed quantity left its mathematically guaranteed range.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

[[noreturn]] inline void contract(const std::string& what) { throw ContractViolation(what); }

}  // namespace detail
}  // namespace bcl
