#pragma once

#include <stdexcept>
#include <string>

namespace cactus {

// Malformed text input or an argument outside an operation's domain.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A numerical solve did not converge within its iteration budget.
struct NonConvergence : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A rejection sampler or size-capped generator ran out of budget.
struct BudgetExhausted : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Requested size is not attainable by the offspring laws at all.
struct LatticeError : InputError {
    using InputError::InputError;
};

// Internal consistency failure: a bug, never a property of valid input.
struct InternalError : std::logic_error {
    using std::logic_error::logic_error;
};

}  // namespace cactus
