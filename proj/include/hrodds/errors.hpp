#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hrodds {

// Malformed textual input (distribution specs, CSV files). Carries the
// offset of the offending character, 0-based within the parsed string or
// 1-based line number for line-oriented formats (see `what()` text).
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, std::size_t position)
        : std::runtime_error(message + " (at position " + std::to_string(position) + ")"),
          position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

// Numerical or model failure on structurally valid input: monotone
// likelihood, separation, non-convergence, quadrature budget exhausted,
// no comparable pairs.
class ModelError : public std::runtime_error {
public:
    explicit ModelError(const std::string& message) : std::runtime_error(message) {}
};

}  // namespace hrodds
