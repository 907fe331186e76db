#pragma once

#include <charconv>
#include <cmath>
#include <string>

#include "term.hpp"

namespace dcalc {

/// Shortest decimal text that reads back to the same double.
inline std::string format_number(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

/// x3, dx3, d^2 x3, Dx3, D^2 x3.
inline std::string to_string(const Variable& v) {
    const std::string x = "x" + std::to_string(v.base());
    if (v.order() == 0) return x;
    const char op = v.family() == Family::difference ? 'D' : 'd';
    if (v.order() == 1) return op + x;
    return std::string(1, op) + "^" + std::to_string(v.order()) + " " + x;
}

namespace detail {

inline bool is_plain_integer(double v) { return v >= 0 && v == std::floor(v) && v < 4294967296.0; }

// Binding strength: sums 1, products 2, unary minus 3, powers 4, atoms 5.
inline int precedence(const Term& t) {
    switch (t.kind()) {
    case Term::Kind::constant: return t.value() < 0 ? 3 : 5;
    case Term::Kind::variable: return 5;
    case Term::Kind::application: break;
    }
    switch (t.symbol().notation) {
    case Notation::add:
    case Notation::sub: return 1;
    case Notation::mul:
    case Notation::div: return 2;
    case Notation::neg: return 3;
    case Notation::power_const: return 4;
    case Notation::power: return t.args()[1].is_constant() && is_plain_integer(t.args()[1].value()) ? 5 : 4;
    case Notation::call: return 5;
    }
    return 5;
}

inline void print(const Term& t, std::string& out);

inline void print_at(const Term& t, int min_prec, std::string& out) {
    if (precedence(t) < min_prec) {
        out += '(';
        print(t, out);
        out += ')';
    } else {
        print(t, out);
    }
}

inline void print_call(const std::string& name, const Term& t, std::string& out) {
    out += name;
    out += '(';
    bool first = true;
    for (const auto& a : t.args()) {
        if (!first) out += ", ";
        first = false;
        print(a, out);
    }
    out += ')';
}

inline void print(const Term& t, std::string& out) {
    switch (t.kind()) {
    case Term::Kind::constant: out += format_number(t.value()); return;
    case Term::Kind::variable: out += to_string(t.var()); return;
    case Term::Kind::application: break;
    }
    const auto& fn = t.symbol();
    const auto args = t.args();
    auto infix = [&](int prec, const char* op) {
        print_at(args[0], prec, out);
        out += op;
        print_at(args[1], prec + 1, out);
    };
    switch (fn.notation) {
    case Notation::add: infix(1, " + "); return;
    case Notation::sub: infix(1, " - "); return;
    case Notation::mul: infix(2, "*"); return;
    case Notation::div: infix(2, "/"); return;
    case Notation::neg:
        out += '-';
        // "-2" would read back as the constant -2
        if (args[0].is_constant() && args[0].value() >= 0) {
            out += '(';
            print(args[0], out);
            out += ')';
        } else {
            print_at(args[0], 3, out);
        }
        return;
    case Notation::power_const:
        print_at(args[0], 5, out);
        out += '^';
        out += format_number(fn.parameter);
        return;
    case Notation::power:
        // A natural-number exponent would read back as pow_const.
        if (args[1].is_constant() && is_plain_integer(args[1].value())) {
            print_call(fn.name, t, out);
            return;
        }
        print_at(args[0], 5, out);
        out += '^';
        print_at(args[1], 3, out);
        return;
    case Notation::call: print_call(fn.name, t, out); return;
    }
}

} // namespace detail

/// Minimal-parenthesis rendering in the parser's grammar.
inline std::string to_string(const Term& t) {
    std::string out;
    detail::print(t, out);
    return out;
}

} // namespace dcalc
