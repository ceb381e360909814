#pragma once

#include <stdexcept>
#include <string>

namespace gwn {

// Length or atom-count mismatch between operands.
struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Argument outside the mathematical domain (sigma <= 0, |phi| >= 1, ...).
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

// Caller broke an operation contract (degree mismatch, bad partition, wrong basis).
struct ContractViolation : std::logic_error {
  using std::logic_error::logic_error;
};

// Combinatorial size guard.
struct SizeError : std::length_error {
  using std::length_error::length_error;
};

}  // namespace gwn
