#pragma once

#include <stdexcept>
#include <string>

namespace spinpoint {

/// Base of every error raised by the library. `code()` is a short
/// machine-readable identifier ("dimension-mismatch", "no-convergence", ...)
/// and `numerical()` separates numerical failures from bad input.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message, bool numerical = false)
        : std::runtime_error(message), code_(std::move(code)), numerical_(numerical) {}

    const std::string& code() const noexcept { return code_; }
    bool numerical() const noexcept { return numerical_; }

private:
    std::string code_;
    bool numerical_;
};

class DimensionError : public Error {
public:
    explicit DimensionError(const std::string& message) : Error("dimension-mismatch", message) {}
};

class InvalidArgument : public Error {
public:
    InvalidArgument(std::string code, const std::string& message) : Error(std::move(code), message) {}
};

class NonFiniteError : public Error {
public:
    explicit NonFiniteError(const std::string& message) : Error("non-finite", message, true) {}
};

/// QR iteration ran out of sweeps. `block()` is the row index of the
/// trailing eigenvalue that failed to deflate.
class ConvergenceError : public Error {
public:
    ConvergenceError(std::size_t block, const std::string& message)
        : Error("no-convergence", message, true), block_(block) {}

    std::size_t block() const noexcept { return block_; }

private:
    std::size_t block_;
};

}  // namespace spinpoint
