#pragma once

#include <stdexcept>
#include <string>

namespace consep {

// Thrown when a certified routine cannot reach a verdict below the global
// precision cap (65536 bits).  Callers that can tolerate three-valued
// results should catch this and downgrade to an indeterminate verdict.
class PrecisionExhausted : public std::runtime_error {
public:
    explicit PrecisionExhausted(const std::string& what)
        : std::runtime_error(what) {}
};

// Thrown when two independently computed certified routes fail to agree.
// This always indicates a bug, never bad input.
class CertificationFailure : public std::logic_error {
public:
    explicit CertificationFailure(const std::string& what)
        : std::logic_error(what) {}
};

inline constexpr long kPrecisionCap = 65536;

}  // namespace consep
