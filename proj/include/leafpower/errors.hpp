#pragma once

#include <stdexcept>
#include <string>

namespace leafpower {

// Input that violates an operation's contract (bad k, vertex out of range, ...).
struct input_error : std::invalid_argument {
    explicit input_error(const std::string& what) : std::invalid_argument(what) {}
};

// Structured text that does not parse; line is 1-based, 0 when unknown.
struct parse_error : std::runtime_error {
    int line;
    parse_error(const std::string& what, int line_no)
        : std::runtime_error(line_no > 0 ? "line " + std::to_string(line_no) + ": " + what
                                         : what),
          line(line_no) {}
};

// Instance exceeds a configured desk-scale ceiling (degree, size, candidate count).
// Distinct from a "no" verdict: the question was not answered.
struct resource_error : std::runtime_error {
    explicit resource_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace leafpower
