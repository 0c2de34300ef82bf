#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace denjoy {

/// Base of every exception raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A precondition on the input was violated (wrong size, unsupported case).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Two refinable reals could not be separated before the precision ceiling.
class UndecidedError : public Error {
public:
    UndecidedError(const std::string& what, int ceiling_bits)
        : Error(what + " (undecided at " + std::to_string(ceiling_bits) + " bits)"),
          ceiling_bits_(ceiling_bits) {}
    int ceiling_bits() const { return ceiling_bits_; }

private:
    int ceiling_bits_;
};

/// An enumeration over Z^d would exceed the configured budget.
class BudgetExceeded : public Error {
public:
    BudgetExceeded(const std::string& what, double achieved_log2_width)
        : Error(what), achieved_log2_width_(achieved_log2_width) {}
    /// log2 of the best certified width reachable within the budget.
    double achieved_log2_width() const { return achieved_log2_width_; }

private:
    double achieved_log2_width_;
};

/// Malformed textual input, with a 1-based position.
class ParseError : public Error {
public:
    ParseError(const std::string& msg, std::size_t line, std::size_t column, const std::string& source = "")
        : Error((source.empty() ? "" : source + ":") + std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
          line_(line), column_(column), message_(msg), source_(source) {}
    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }
    const std::string& message() const { return message_; }
    /// File the text came from, if known.
    const std::string& source() const { return source_; }

private:
    std::size_t line_;
    std::size_t column_;
    std::string message_;
    std::string source_;
};

} // namespace denjoy
