#pragma once

#include <stdexcept>
#include <string>

namespace adr {

enum class ErrorKind {
    Io,          // file missing, unreadable, unwritable
    Format,      // corrupt or malformed artifact
    Invalid,     // bad argument or violated precondition
    Domain,      // parameter outside a distribution/model domain
    Empty,       // an operation that needs data got none
    Internal,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string message)
        : std::runtime_error(std::move(message)), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void throw_error(ErrorKind kind, const std::string &message) {
    throw Error(kind, message);
}

} // namespace adr
