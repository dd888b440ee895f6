#pragma once

#include <stdexcept>
#include <string>

namespace vcobs {

// Input text could not be parsed; message carries the line number.
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

// Structurally invalid request (self-loop, id out of range, bad site).
struct StructuralError : std::runtime_error {
    explicit StructuralError(const std::string& msg) : std::runtime_error(msg) {}
};

// An exact solver or search ran out of its node budget. Never a wrong answer.
struct BudgetExceeded : std::runtime_error {
    explicit BudgetExceeded(const std::string& msg) : std::runtime_error(msg) {}
};

// Training produced a non-finite loss or parameters.
struct DivergenceError : std::runtime_error {
    explicit DivergenceError(const std::string& msg) : std::runtime_error(msg) {}
};

// Graph exceeds a documented implementation cap.
struct CapExceeded : std::runtime_error {
    explicit CapExceeded(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace vcobs
