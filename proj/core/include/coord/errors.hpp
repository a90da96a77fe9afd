#pragma once

#include <stdexcept>
#include <string>

namespace coord {

// Input violates a geometric or numeric precondition (too few sites,
// collinear point sets, ...).
struct DegenerateInputError : std::invalid_argument {
    explicit DegenerateInputError(const std::string& what) : std::invalid_argument(what) {}
};

// Bad configuration value (resolution too low, N > M, unknown key, ...).
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// API contract broken by the caller (non-square matrix handed to the
// assignment solver and similar).
struct ContractError : std::logic_error {
    explicit ContractError(const std::string& what) : std::logic_error(what) {}
};

// Event delivered to a teammate model it was not addressed to.
struct RoutingError : std::logic_error {
    explicit RoutingError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace coord
