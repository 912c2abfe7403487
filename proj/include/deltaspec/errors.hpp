#pragma once

#include <stdexcept>

namespace deltaspec {

// Error taxonomy mirrored by the CLI exit codes:
//   2 = precondition violation, 3 = budget exceeded, 4 = internal verification failure.

struct PreconditionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Thrown when a result fails its own re-verification. Any occurrence is a bug.
struct VerificationError : std::logic_error {
    using std::logic_error::logic_error;
};

}  // namespace deltaspec
