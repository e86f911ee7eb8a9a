#pragma once

#include <stdexcept>

namespace sharpturn {

/// An operation was called outside its documented domain.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The working precision cannot decide a required comparison.
class PrecisionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace sharpturn
