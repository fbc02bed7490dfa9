#pragma once

#include <stdexcept>
#include <string>

namespace hornets {

// Base of everything this library throws.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Ill-formed model: kind violations, unknown identifiers, bad rates.
class ModelError : public Error {
public:
    using Error::Error;
};

// Model-file syntax or semantic error with a source location.
class ParseError : public ModelError {
public:
    ParseError(std::string file, int line, int col, const std::string& msg)
        : ModelError(file + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + msg),
          file_(std::move(file)), line_(line), col_(col) {}

    const std::string& file() const noexcept { return file_; }
    int line() const noexcept { return line_; }
    int col() const noexcept { return col_; }

private:
    std::string file_;
    int line_;
    int col_;
};

// Multiset counts and universe bounds are checked, never wrapped.
class OverflowError : public Error {
public:
    using Error::Error;
};

// Enumeration caps (modes per event, states, depth) were exceeded.
class ResourceLimitError : public Error {
public:
    using Error::Error;
};

// fire() was asked to apply a mode that is not enabled.
class NotEnabledError : public Error {
public:
    using Error::Error;
};

// Term or guard evaluation failed (unbound variable, unknown transition,
// operator precondition violated).
class EvalError : public Error {
public:
    using Error::Error;
};

} // namespace hornets
