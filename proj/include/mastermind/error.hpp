#pragma once

#include <stdexcept>
#include <string>

namespace mastermind {

/// Failure categories surfaced through the C API as status codes.
enum class ErrorCode {
    invalid_argument = 1,
    overflow,
    memory_budget,
    infeasible,
    bound_too_low,
    parse,
    verify,
    io,
    internal,
};

class Error : public std::runtime_error
{
public:
    Error(ErrorCode code, const std::string &what)
        : std::runtime_error(what), code_(code)
    {
    }

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string &what)
{
    throw Error(code, what);
}

} // namespace mastermind
