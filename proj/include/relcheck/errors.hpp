#pragma once

#include <stdexcept>
#include <string>

namespace relcheck {

// Base for everything relcheck throws on purpose.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Syntax error in one of the text formats. line/col are 1-based.
struct ParseError : Error {
    ParseError(std::string msg, int line_, int col_)
        : Error(std::to_string(line_) + ":" + std::to_string(col_) + ": " + msg),
          line(line_), col(col_) {}
    int line;
    int col;
};

// Semantically invalid input: space mismatch, undeclared variable, wrong
// argument kind for a judgment, malformed manifest values, ...
struct InputError : Error {
    using Error::Error;
};

// An operation would enumerate or allocate past the configured limit
// (exhaustive cap, dense budget). Callers can retry with a larger limit
// or switch to oracle mode; the CLI maps this to the "inconclusive" exit.
struct CapacityError : Error {
    using Error::Error;
};

} // namespace relcheck
