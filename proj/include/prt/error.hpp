#pragma once

#include <stdexcept>
#include <string>

namespace prt {

/// Failure categories. `Incomplete` and `Budget` mean "could not decide":
/// callers surface them as UNKNOWN rather than guessing.
enum class ErrorKind {
    Usage,
    Parse,
    Schema,
    Arity,
    Domain,
    Incomplete,
    Budget,
    Cap,
    Unsupported,
};

inline const char* to_string(ErrorKind k) {
    switch (k) {
    case ErrorKind::Usage: return "usage";
    case ErrorKind::Parse: return "parse";
    case ErrorKind::Schema: return "schema";
    case ErrorKind::Arity: return "arity";
    case ErrorKind::Domain: return "domain";
    case ErrorKind::Incomplete: return "incomplete";
    case ErrorKind::Budget: return "budget";
    case ErrorKind::Cap: return "cap";
    case ErrorKind::Unsupported: return "unsupported";
    }
    return "unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

    /// True when the failure means "undecided" rather than "invalid input".
    bool is_unknown() const noexcept {
        return kind_ == ErrorKind::Incomplete || kind_ == ErrorKind::Budget;
    }

private:
    ErrorKind kind_;
};

}  // namespace prt
