#pragma once

#include <stdexcept>
#include <string>

namespace hlmlp {

// Exit-code mapping used by the CLI: UsageError -> 1, DataError -> 2, RunError -> 3.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace hlmlp
