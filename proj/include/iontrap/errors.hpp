#ifndef IONTRAP_ERRORS_HPP
#define IONTRAP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace iontrap {

// Input outside an operation's mathematical domain (coincident ions,
// nonpositive anisotropy, too few fit points, ...).
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// An iterative solver hit its iteration cap before reaching tolerance.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double residual)
        : std::runtime_error(what), residual_(residual) {}
    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

// Bisection endpoints do not straddle a phase transition.
class BracketError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Malformed input data; carries the 1-based line number of the offending row.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t line)
        : std::runtime_error(what + " (line " + std::to_string(line) + ")"),
          line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

// Syntactically valid input that violates a value constraint.
class ValidationError : public std::runtime_error {
public:
    ValidationError(const std::string& what, std::size_t line)
        : std::runtime_error(what + " (line " + std::to_string(line) + ")"),
          line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

// Missing or unusable configuration (e.g. calibration constants absent).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace iontrap

#endif
