#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qcl {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// A precondition of an operation does not hold (degenerate q, bad index, ...).
class DomainError : public Error {
   public:
    using Error::Error;
};

/// Operands live in incompatible algebras or scalar fields.
class ContextMismatch : public Error {
   public:
    using Error::Error;
};

class DivisionByZero : public Error {
   public:
    DivisionByZero() : Error("division by zero") {}
};

class ParseError : public Error {
   public:
    ParseError(std::size_t position, const std::string& message)
        : Error("parse error at " + std::to_string(position) + ": " + message), position_(position) {}

    std::size_t position() const noexcept { return position_; }

   private:
    std::size_t position_;
};

}  // namespace qcl
