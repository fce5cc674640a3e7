#pragma once

#include <stdexcept>

namespace qident {

// Error taxonomy. Each class maps one-to-one onto a status code of the
// public C API (see include/qident/qident.h).

// A caller passed an argument outside the documented domain.
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A requested operator would exceed the configured dense-dimension cap.
class SizeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Exact integer arithmetic left the representable range.
class OverflowError : public std::range_error {
 public:
  using std::range_error::range_error;
};

// An operator handed to a routine violates that routine's contract
// (e.g. a non-Hermitian matrix where a Hermitian one is required).
class ContractError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// File input/output failed.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qident
