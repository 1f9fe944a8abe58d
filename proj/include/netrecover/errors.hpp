#pragma once

// Exception types shared across the library. Index errors use
// std::out_of_range and parameter-range errors use std::domain_error
// directly; the types below cover the remaining contract failures.

#include <stdexcept>
#include <string>

namespace netrecover {

// Mismatched operand sizes (graph node counts, permutation lengths, ...).
class dimension_error : public std::invalid_argument {
public:
    explicit dimension_error(const std::string& what) : std::invalid_argument(what) {}
};

// Conflicting constraints, e.g. pinned assignment pairs sharing a row.
class constraint_error : public std::invalid_argument {
public:
    explicit constraint_error(const std::string& what) : std::invalid_argument(what) {}
};

// Structurally valid input on which the requested quantity is undefined,
// e.g. selecting a threshold from a constant average matrix.
class degenerate_error : public std::runtime_error {
public:
    explicit degenerate_error(const std::string& what) : std::runtime_error(what) {}
};

// File open/read/write/parse failures; message carries the path.
class io_error : public std::runtime_error {
public:
    explicit io_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace netrecover
