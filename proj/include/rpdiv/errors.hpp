#pragma once

#include <stdexcept>
#include <string>

namespace rpdiv {

// Bad caller input: malformed numbers, violated preconditions, parameters
// outside a documented domain.
class InputError : public std::invalid_argument {
 public:
  explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

// A condition that the algorithms guarantee has failed. Always a bug.
class InvariantError : public std::logic_error {
 public:
  explicit InvariantError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace rpdiv
