#pragma once

#include <stdexcept>
#include <string>

namespace tinv {

// Bad parameters or malformed input; maps to exit code 2.
class invalid_input : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A configured size cap would be exceeded; maps to exit code 3.
class resource_limit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace tinv
