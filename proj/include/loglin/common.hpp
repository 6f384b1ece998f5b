#pragma once

#include <set>
#include <stdexcept>
#include <string>

namespace loglin {

/// A set of factor (vertex) names.
using NameSet = std::set<std::string>;

/// Malformed input: unknown names, bad syntax, precondition violations on
/// user-supplied data. The CLI maps this to exit code 2.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numeric procedure could not produce a valid result. CLI exit code 3.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace loglin
