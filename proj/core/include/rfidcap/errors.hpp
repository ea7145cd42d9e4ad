#pragma once

#include <stdexcept>

namespace rfidcap {

// Bad data: malformed probability tables, out-of-range parameters, broken files.
// CLI maps this to exit code 1.
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// API misuse: wrong rank, axis out of range, mismatched sequence lengths.
// Also exit code 1 at the CLI boundary.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Structurally valid configuration that cannot be run: cell width below one,
// codebook or search-space caps exceeded. CLI maps this to exit code 2.
struct InfeasibleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace rfidcap
