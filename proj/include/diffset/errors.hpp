#pragma once

#include <stdexcept>
#include <string>

namespace diffset {

// Bad input: invalid group factors, mismatched moduli, parameters that violate
// an operation's arithmetic preconditions. The CLI maps these to exit code 2.
struct malformed_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A parameter set that is arithmetically well-formed but provably cannot occur
// (non-integral class sizes and the like). The CLI treats this as a negative
// verdict, not a usage error.
struct profile_error : std::domain_error {
    using std::domain_error::domain_error;
};

// Internal invariant broke: an exact identity that must hold failed to hold.
// Always indicates a bug, never bad input.
struct contract_error : std::logic_error {
    using std::logic_error::logic_error;
};

} // namespace diffset
