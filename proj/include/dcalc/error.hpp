#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace dcalc {

/// Base class for every error raised by the engine.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A primitive was evaluated outside its domain, or produced a non-finite value.
class DomainError : public Error {
public:
    using Error::Error;
};

/// A non-smooth symbol was met while differentiating.
class NotDifferentiable : public Error {
public:
    explicit NotDifferentiable(std::string symbol, std::optional<std::size_t> level = std::nullopt)
        : Error(make_message(symbol, level)), symbol_(std::move(symbol)), level_(level) {}

    const std::string& symbol() const noexcept { return symbol_; }
    std::optional<std::size_t> level() const noexcept { return level_; }

private:
    static std::string make_message(const std::string& symbol, std::optional<std::size_t> level) {
        std::string msg = "not differentiable: '" + symbol + "' is not smooth";
        if (level) msg += " (at differential level " + std::to_string(*level) + ")";
        return msg;
    }

    std::string symbol_;
    std::optional<std::size_t> level_;
};

/// Differential-respecting substitution needs a precalculus (order 0) variable.
class OrderNotZero : public Error {
public:
    using Error::Error;
};

class NotPolynomialInDifferentials : public Error {
public:
    NotPolynomialInDifferentials(std::string witness)
        : Error("not polynomial in differential variables: " + witness), witness_(std::move(witness)) {}

    const std::string& witness() const noexcept { return witness_; }

private:
    std::string witness_;
};

class TooLarge : public Error {
public:
    using Error::Error;
};

/// A term mixes difference variables with differential variables.
class MixedVariables : public Error {
public:
    using Error::Error;
};

class SyntaxError : public Error {
public:
    SyntaxError(const std::string& what, std::size_t offset)
        : Error(what + " at byte " + std::to_string(offset)), offset_(offset) {}

    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

class UnknownSymbol : public Error {
public:
    explicit UnknownSymbol(const std::string& name) : Error("unknown function symbol '" + name + "'") {}
};

class ArityMismatch : public Error {
public:
    ArityMismatch(const std::string& name, std::size_t expected, std::size_t got)
        : Error("'" + name + "' takes " + std::to_string(expected) + " argument(s), got " +
                std::to_string(got)) {}
};

} // namespace dcalc
