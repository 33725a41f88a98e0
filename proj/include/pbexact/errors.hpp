#pragma once
#include <stdexcept>
#include <string>

namespace pbexact {

// Bad input: malformed documents, unknown ids, out-of-range parameters.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A configured search or solver size cap was hit before an answer was reached.
struct BoundExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Consistency failure that indicates a bug, not bad input.
struct InternalError : std::logic_error {
  using std::logic_error::logic_error;
};

} // namespace pbexact
