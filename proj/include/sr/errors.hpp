#pragma once

#include <stdexcept>

namespace sr {

// Thrown when an enumeration or subset sweep would exceed its configured budget.
struct BudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown when a checked internal invariant fails (e.g. BFS depth != inversion
// length). Must never fire in a correct build; the CLI maps it to exit code 4.
struct InternalInvariantError : std::logic_error {
  using std::logic_error::logic_error;
};

// Thrown on malformed or corrupt cache files.
struct CacheError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace sr
