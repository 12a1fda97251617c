#pragma once

#include <stdexcept>

namespace rrdt {

/// Raised for bad user input: unreadable maps, malformed scenario files,
/// infeasible start/goal. The CLI maps it to exit code 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace rrdt
