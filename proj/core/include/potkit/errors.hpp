#pragma once

#include <stdexcept>
#include <string>

namespace potkit {

struct DimensionMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct NonHomogeneous : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct DegreeMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Synthesis or projection asked for on an operator with a known rank-drop witness.
struct NotConstantRank : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NonZeroMean : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotAFree : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ResolutionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ParseError : std::runtime_error {
    ParseError(const std::string& what, std::size_t offset)
        : std::runtime_error(what), offset(offset) {}
    std::size_t offset;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace potkit
