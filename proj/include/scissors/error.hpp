#pragma once

#include <stdexcept>
#include <string>

namespace scissors {

enum class ErrorKind
{
    Domain,     // a mathematical precondition or invariant does not hold
    Malformed,  // input could not be parsed into a well-typed value
};

/**
 * Exception carrying a stable error code (e.g. "NonSeparating") next to the
 * human-readable message. The CLI maps Domain to exit code 1 and Malformed
 * to exit code 2.
 */
class Error : public std::runtime_error
{
    public:
        Error(ErrorKind kind, std::string code, const std::string& message)
            : std::runtime_error(message), kind_(kind), code_(std::move(code))
        {
        }

        ErrorKind kind() const { return kind_; }
        const std::string& code() const { return code_; }

    private:
        ErrorKind kind_;
        std::string code_;
};

[[noreturn]] inline void domain_error(const std::string& code, const std::string& message)
{
    throw Error(ErrorKind::Domain, code, message);
}

[[noreturn]] inline void malformed(const std::string& message)
{
    throw Error(ErrorKind::Malformed, "Malformed", message);
}

}  // namespace scissors
