#pragma once

#include <stdexcept>
#include <string>

namespace qflag {

// Selects the OpenMP kernel or its serial reference. Both paths must
// produce identical results; tests compare them directly.
enum class Exec { serial, parallel };

// Raised when a requested computation would exceed the configured matrix
// cell budget. The message carries the offending dimensions.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Height parameters produce a tie, or a spectrum is degenerate.
class NonGenericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qflag
