#pragma once
#include <stdexcept>

namespace chaindisc {

// Bad user input / malformed config. CLI maps this to exit code 2.
struct config_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Instance too large for an exact mode (or another precondition broken).
// CLI maps this to exit code 3.
struct size_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A search budget ran out without producing the required certificate.
// CLI maps this to exit code 4.
struct budget_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace chaindisc
