#pragma once

#include <stdexcept>
#include <string>

namespace negdep {

// Malformed or contract-violating input (bad file, dimension mismatch,
// cap exceeded, zero-probability conditioning event, ...). The CLI maps
// this to exit code 2.
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// Numeric range failure (e.g. trace_exp overflow). Also exit code 2.
class RangeError : public std::runtime_error {
 public:
  explicit RangeError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace negdep
