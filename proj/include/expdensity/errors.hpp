#pragma once

#include <stdexcept>

namespace expdensity {

// Malformed set-spec string or an argument outside the documented grammar.
struct SpecError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A request exceeded the configured memory/size budget. Reported, not fatal:
// callers (the CLI in particular) turn this into a clean exit.
struct BudgetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace expdensity
