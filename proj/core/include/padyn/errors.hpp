#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace padyn {

// Base of every library error. `code()` is the machine-readable tag the CLI
// puts into its JSON error payloads.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what)
        : std::runtime_error(what), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

// An input violates an operation's precondition (wrong ring, non-unit
// linear coefficient, non-minimal pair, ...).
class PreconditionError : public Error {
public:
    explicit PreconditionError(const std::string& what, std::string code = "precondition")
        : Error(std::move(code), what) {}
};

// The tracked p-adic or x-adic precision is not enough to decide the answer.
class PrecisionError : public Error {
public:
    explicit PrecisionError(const std::string& what, std::string code = "precision")
        : Error(std::move(code), what) {}
};

class RingMismatch : public PreconditionError {
public:
    explicit RingMismatch(const std::string& what) : PreconditionError(what, "ring_mismatch") {}
};

} // namespace padyn
