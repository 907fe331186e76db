#pragma once

#include <cctype>
#include <charconv>
#include <cmath>
#include <optional>
#include <cstdint>
#include <limits>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

#include "expansion.hpp"
#include "registry.hpp"
#include "term.hpp"

// Surface syntax, loosest to tightest:
//
//   expr    := product (('+' | '-') product)*
//   product := unary (('*' | '/') unary)*
//   unary   := '-' unary | power
//   power   := atom ('^' unary)?              right-associative
//   atom    := number | 'pi' | 'euler' | variable | name '(' args ')' | '(' expr ')'
//
// Variables are x<n>; differentials dx<n>, ddx<n>, d^<k> x<n>; difference
// variables Dx<n>, D^<k> x<n>. A natural-number constant exponent gives
// pow_const, any other exponent the binary pow.

namespace dcalc {

namespace detail {

class Parser {
public:
    Parser(std::string_view text, const Registry& reg) : src_(text), reg_(reg) {}

    Term parse_all() {
        Term t = expr();
        skip_ws();
        if (pos_ != src_.size()) fail("unexpected '" + std::string(1, src_[pos_]) + "'");
        return t;
    }

    Variable variable_only() {
        skip_ws();
        const std::size_t start = pos_;
        auto v = try_variable();
        if (!v) fail_at("expected a variable", start);
        return *v;
    }

    std::vector<Variable> variable_list() {
        std::vector<Variable> out;
        skip_ws();
        if (src_.substr(pos_) == "1") return out;
        while (true) {
            skip_ws();
            if (pos_ == src_.size()) break;
            if (src_[pos_] == '*') {
                ++pos_;
                continue;
            }
            const std::size_t start = pos_;
            auto v = try_variable();
            if (!v) fail_at("expected a variable", start);
            out.push_back(*v);
        }
        return out;
    }

private:
    [[noreturn]] void fail(const std::string& what) const { throw SyntaxError(what, pos_); }
    [[noreturn]] void fail_at(const std::string& what, std::size_t at) const { throw SyntaxError(what, at); }

    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < src_.size() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < src_.size() ? src_[pos_] : '\0';
    }

    Term expr() {
        Term acc = product();
        while (true) {
            if (accept('+')) acc = add(acc, product());
            else if (accept('-')) acc = sub(acc, product());
            else return acc;
        }
    }

    Term product() {
        Term acc = unary();
        while (true) {
            if (accept('*')) acc = mul(acc, unary());
            else if (accept('/')) acc = div(acc, unary());
            else return acc;
        }
    }

    Term unary() {
        if (!accept('-')) return power();
        // A literal directly after '-' is a negative constant, unless it is
        // the base of a power: -2^2 means -(2^2).
        const std::size_t save = pos_;
        skip_ws();
        if (pos_ < src_.size() && (std::isdigit(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '.')) {
            const double v = number();
            if (peek() != '^') return constant(-v);
            pos_ = save;
        }
        return neg(unary());
    }

    Term power() {
        Term base = atom();
        if (!accept('^')) return base;
        Term exponent = unary();
        if (exponent.is_constant()) {
            const double k = exponent.value();
            if (k >= 0 && k < 4294967296.0 && k == std::floor(k))
                return pow_const(base, static_cast<unsigned>(k));
        }
        return pow(base, exponent);
    }

    double number() {
        const std::size_t start = pos_;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        if (pos_ < src_.size() && src_[pos_] == '.') {
            ++pos_;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        }
        if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
            std::size_t p = pos_ + 1;
            if (p < src_.size() && (src_[p] == '+' || src_[p] == '-')) ++p;
            if (p < src_.size() && std::isdigit(static_cast<unsigned char>(src_[p]))) {
                pos_ = p;
                while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
            }
        }
        double v = 0;
        const auto res = std::from_chars(src_.data() + start, src_.data() + pos_, v);
        if (res.ec != std::errc{} || res.ptr != src_.data() + pos_ || !std::isfinite(v))
            fail_at("malformed number", start);
        return v;
    }

    std::uint32_t index(std::string_view digits, std::size_t at) const {
        std::uint32_t v = 0;
        const auto res = std::from_chars(digits.data(), digits.data() + digits.size(), v);
        if (res.ec != std::errc{} || res.ptr != digits.data() + digits.size())
            fail_at("bad variable index '" + std::string(digits) + "'", at);
        return v;
    }

    std::string_view identifier() {
        const std::size_t start = pos_;
        while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) ++pos_;
        while (pos_ < src_.size() && src_[pos_] == '\'') ++pos_;
        return src_.substr(start, pos_ - start);
    }

    static bool all_digits(std::string_view s) {
        return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
    }

    // x<n>, d..dx<n>, D..Dx<n>, d^k x<n>, D^k x<n>. Leaves pos_ untouched on failure.
    std::optional<Variable> try_variable() {
        skip_ws();
        const std::size_t start = pos_;
        if (pos_ >= src_.size() || !std::isalpha(static_cast<unsigned char>(src_[pos_]))) return std::nullopt;
        const std::string_view id = identifier();

        if ((id == "d" || id == "D") && peek() == '^') {
            const Family fam = id == "d" ? Family::differential : Family::difference;
            accept('^');
            skip_ws();
            const std::size_t kstart = pos_;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
            const auto order = index(src_.substr(kstart, pos_ - kstart), kstart);
            skip_ws();
            const std::size_t xstart = pos_;
            const std::string_view x = identifier();
            if (x.size() < 2 || x[0] != 'x' || !all_digits(x.substr(1))) fail_at("expected x<n> after d^k", xstart);
            if (order == 0) fail_at("differential order must be positive", kstart);
            return Variable{index(x.substr(1), xstart + 1), order, fam};
        }

        const char op = id.empty() ? '\0' : id[0];
        if (op == 'd' || op == 'D') {
            const auto ops = id.find_first_not_of(op);
            if (ops != std::string_view::npos && id[ops] == 'x' && all_digits(id.substr(ops + 1)))
                return Variable{index(id.substr(ops + 1), start + ops + 1), static_cast<std::uint32_t>(ops),
                                op == 'd' ? Family::differential : Family::difference};
        }
        if (op == 'x' && all_digits(id.substr(1))) return Variable{index(id.substr(1), start + 1), 0};
        pos_ = start;
        return std::nullopt;
    }

    Term atom() {
        skip_ws();
        if (pos_ >= src_.size()) fail("unexpected end of input");
        const char c = src_[pos_];
        if (c == '(') {
            ++pos_;
            Term inner = expr();
            if (!accept(')')) fail("expected ')'");
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return constant(number());
        if (!std::isalpha(static_cast<unsigned char>(c)) && c != '_') fail("unexpected '" + std::string(1, c) + "'");

        if (auto v = try_variable()) return Term::variable(*v);

        const std::size_t start = pos_;
        const std::string name(identifier());
        if (name == "pi") return constant(std::numbers::pi);
        if (name == "euler") return constant(std::numbers::e);
        if (!accept('(')) fail_at("unknown identifier '" + name + "'", start);
        auto fn = reg_.find(name);
        if (!fn) throw UnknownSymbol(name);
        std::vector<Term> args;
        if (!accept(')')) {
            do args.push_back(expr());
            while (accept(','));
            if (!accept(')')) fail("expected ')' or ','");
        }
        if (args.size() != fn->arity) throw ArityMismatch(fn->name, fn->arity, args.size());
        return Term::apply(std::move(fn), std::move(args));
    }

    std::string_view src_;
    const Registry& reg_;
    std::size_t pos_ = 0;
};

} // namespace detail

inline Term parse(std::string_view text, const Registry& reg = Registry::builtin()) {
    return detail::Parser(text, reg).parse_all();
}

/// A single variable such as "x0", "ddx1" or "d^3 x2".
inline Variable parse_variable(std::string_view text) {
    detail::Parser p(text, Registry::builtin());
    const Variable v = p.variable_only();
    // any trailing text is an error
    const auto rest = p.variable_list();
    if (!rest.empty()) throw SyntaxError("expected a single variable", text.size());
    return v;
}

/// Whitespace- or '*'-separated differential variables, e.g. "dx0 dx0 d^2 x1".
/// "1" or the empty string is the empty monomial.
inline DiffMonomial parse_monomial(std::string_view text) {
    return DiffMonomial(detail::Parser(text, Registry::builtin()).variable_list());
}

} // namespace dcalc
