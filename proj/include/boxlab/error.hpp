#pragma once

#include <stdexcept>
#include <string>

namespace boxlab {

// Bad argument value: out-of-range vertex, mismatched vertex counts, loops in
// a pair set, overlapping parts, and the like.
struct ArgumentError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A documented operation precondition does not hold (the inputs are
// well-formed values but outside the operation's contract).
struct PreconditionError : std::logic_error {
    using std::logic_error::logic_error;
};

// Malformed input text.  Carries the 1-based line number when known.
struct FormatError : std::runtime_error {
    int line = 0;
    explicit FormatError(const std::string& what, int line_no = 0)
        : std::runtime_error(line_no > 0 ? what + " (line " + std::to_string(line_no) + ")"
                                         : what),
          line(line_no) {}
};

}  // namespace boxlab
