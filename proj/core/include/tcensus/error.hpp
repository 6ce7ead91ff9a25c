#pragma once

#include <stdexcept>
#include <string>

namespace tcensus {

// An internal mathematical invariant failed: a Mazur violation, an oracle
// mismatch, a count above its proven bound. Never a user error.
class InvariantViolation : public std::logic_error {
 public:
  explicit InvariantViolation(const std::string& what) : std::logic_error(what) {}
};

}  // namespace tcensus
