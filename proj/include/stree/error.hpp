#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace stree {

enum class Errc {
    DegeneratePoint,
    DegenerateDirection,
    DegenerateInput,
    TooFewPoints,
    NonPositiveLength,
    InvalidTolerances,
    NoConvergence,
    ParseError,
    NotConnectedYet,
    EmptyUndoStack,
    InvalidPhase,
    MalformedAction,
    UnknownSession,
};

/// Stable identifier used in reports and API error bodies.
std::string_view errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    Errc code() const noexcept { return code_; }
    std::string_view name() const noexcept { return errc_name(code_); }

private:
    Errc code_;
};

/// Malformed terminal file line.
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& what)
        : Error(Errc::ParseError, "line " + std::to_string(line) + ": " + what),
          line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

} // namespace stree
