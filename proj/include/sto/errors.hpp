#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace sto {

// Bad input values or broken type invariants (negative element, self-loop, ...).
struct validation_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed instance file. Message carries file name and position/field.
struct parse_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A build would exceed the configured word budget.
struct budget_error : std::runtime_error {
    uint64_t required_words;
    uint64_t budget_words;
    budget_error(const std::string& what, uint64_t required, uint64_t budget)
        : std::runtime_error(what), required_words(required), budget_words(budget) {}
};

}  // namespace sto
