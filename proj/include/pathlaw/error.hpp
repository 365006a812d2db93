#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pathlaw {

// Invalid argument or parameter outside its declared range.
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Evaluation point outside a function's support (e.g. t < 0).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class IndexError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

// Malformed input data. `line()` is 1-based, 0 when not tied to a line.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t line = 0)
        : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what),
          line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class EmptyInputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A graph violates a structural requirement (e.g. a cycle in a causal DAG).
class StructuralError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Too few nonempty bins to identify the model's parameters.
class UnderdeterminedError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace pathlaw
