#pragma once

#include <cmath>
#include <map>
#include <memory>
#include <numbers>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "term.hpp"

// Built-in function symbols, raw and simplifying term constructors, and the
// name -> symbol registry used by the parser.

namespace dcalc {

namespace detail {
inline double checked(double v, const char* what) {
    if (!std::isfinite(v)) throw DomainError(std::string(what) + " produced a non-finite value");
    return v;
}
} // namespace detail

namespace symbols {
inline const SymbolRef& add();
inline const SymbolRef& sub();
inline const SymbolRef& mul();
inline const SymbolRef& div();
inline const SymbolRef& neg();
inline const SymbolRef& pow();
inline const SymbolRef& exp();
inline const SymbolRef& ln();
inline const SymbolRef& sin();
inline const SymbolRef& cos();
inline const SymbolRef& abs();
inline const SymbolRef& identity();
inline SymbolRef pow_const(unsigned k);
} // namespace symbols

// ---------------------------------------------------------------------------
// Raw constructors: build exactly the requested node.
// ---------------------------------------------------------------------------

inline Term add(Term a, Term b) { return Term::apply(symbols::add(), {std::move(a), std::move(b)}); }
inline Term sub(Term a, Term b) { return Term::apply(symbols::sub(), {std::move(a), std::move(b)}); }
inline Term mul(Term a, Term b) { return Term::apply(symbols::mul(), {std::move(a), std::move(b)}); }
inline Term div(Term a, Term b) { return Term::apply(symbols::div(), {std::move(a), std::move(b)}); }
inline Term neg(Term a) { return Term::apply(symbols::neg(), {std::move(a)}); }
inline Term pow(Term a, Term b) { return Term::apply(symbols::pow(), {std::move(a), std::move(b)}); }
inline Term pow_const(Term a, unsigned k) { return Term::apply(symbols::pow_const(k), {std::move(a)}); }
inline Term exp(Term a) { return Term::apply(symbols::exp(), {std::move(a)}); }
inline Term ln(Term a) { return Term::apply(symbols::ln(), {std::move(a)}); }
inline Term sin(Term a) { return Term::apply(symbols::sin(), {std::move(a)}); }
inline Term cos(Term a) { return Term::apply(symbols::cos(), {std::move(a)}); }
inline Term abs(Term a) { return Term::apply(symbols::abs(), {std::move(a)}); }
inline Term identity(Term a) { return Term::apply(symbols::identity(), {std::move(a)}); }

inline Term operator+(Term a, Term b) { return add(std::move(a), std::move(b)); }
inline Term operator-(Term a, Term b) { return sub(std::move(a), std::move(b)); }
inline Term operator*(Term a, Term b) { return mul(std::move(a), std::move(b)); }
inline Term operator/(Term a, Term b) { return div(std::move(a), std::move(b)); }
inline Term operator-(Term a) { return neg(std::move(a)); }

/// Sum of a list, left-associated; empty list gives 0.
inline Term sum_of(const std::vector<Term>& ts) {
    if (ts.empty()) return constant(0);
    Term acc = ts.front();
    for (std::size_t i = 1; i < ts.size(); ++i) acc = add(acc, ts[i]);
    return acc;
}

// ---------------------------------------------------------------------------
// Light constructors: the node, with 0*T, 1*T, T+0 and constant folding applied
// at the top. Arguments are assumed already light-simplified.
// ---------------------------------------------------------------------------

namespace light {

inline Term apply(const SymbolRef& fn, std::vector<Term> args) {
    if (args.size() != fn->arity) throw ArityMismatch(fn->name, fn->arity, args.size());
    if (fn->notation == Notation::mul) {
        if (args[0].is_constant(0) || args[1].is_constant(0)) return constant(0);
        if (args[0].is_constant(1)) return args[1];
        if (args[1].is_constant(1)) return args[0];
    } else if (fn->notation == Notation::add) {
        if (args[0].is_constant(0)) return args[1];
        if (args[1].is_constant(0)) return args[0];
    }
    if (std::all_of(args.begin(), args.end(), [](const Term& a) { return a.is_constant(); })) {
        std::vector<double> xs;
        xs.reserve(args.size());
        for (const auto& a : args) xs.push_back(a.value());
        try {
            const double v = fn->eval(xs);
            if (std::isfinite(v)) return constant(v);
        } catch (const DomainError&) {
        }
    }
    return Term::apply(fn, std::move(args));
}

inline Term add(Term a, Term b) { return apply(symbols::add(), {std::move(a), std::move(b)}); }
inline Term sub(Term a, Term b) { return apply(symbols::sub(), {std::move(a), std::move(b)}); }
inline Term mul(Term a, Term b) { return apply(symbols::mul(), {std::move(a), std::move(b)}); }
inline Term div(Term a, Term b) { return apply(symbols::div(), {std::move(a), std::move(b)}); }
inline Term neg(Term a) { return apply(symbols::neg(), {std::move(a)}); }
inline Term pow(Term a, Term b) { return apply(symbols::pow(), {std::move(a), std::move(b)}); }
inline Term pow_const(Term a, unsigned k) { return apply(symbols::pow_const(k), {std::move(a)}); }
inline Term call(const SymbolRef& fn, Term a) { return apply(fn, {std::move(a)}); }

} // namespace light

// ---------------------------------------------------------------------------
// Symbol definitions
// ---------------------------------------------------------------------------

namespace detail {

inline SymbolRef unary(std::string name, double (*f)(double), PartialBuilder d, bool smooth = true) {
    Symbol s;
    s.name = name;
    s.arity = 1;
    s.eval = [f, name](std::span<const double> x) { return checked(f(x[0]), name.c_str()); };
    s.partials = {std::move(d)};
    s.smooth = smooth;
    return make_symbol(std::move(s));
}

inline SymbolRef binary(std::string name, Notation notation, Evaluator eval, PartialBuilder d1, PartialBuilder d2) {
    Symbol s;
    s.name = std::move(name);
    s.arity = 2;
    s.eval = std::move(eval);
    s.partials = {std::move(d1), std::move(d2)};
    s.notation = notation;
    return make_symbol(std::move(s));
}

inline PartialBuilder const_partial(double c) {
    return [c](std::span<const Term>) { return constant(c); };
}

} // namespace detail

namespace symbols {

inline const SymbolRef& add() {
    static const SymbolRef s = detail::binary(
        "add", Notation::add, [](std::span<const double> x) { return detail::checked(x[0] + x[1], "add"); },
        detail::const_partial(1), detail::const_partial(1));
    return s;
}

inline const SymbolRef& sub() {
    static const SymbolRef s = detail::binary(
        "sub", Notation::sub, [](std::span<const double> x) { return detail::checked(x[0] - x[1], "sub"); },
        detail::const_partial(1), detail::const_partial(-1));
    return s;
}

inline const SymbolRef& mul() {
    static const SymbolRef s = detail::binary(
        "mul", Notation::mul, [](std::span<const double> x) { return detail::checked(x[0] * x[1], "mul"); },
        [](std::span<const Term> a) { return a[1]; }, [](std::span<const Term> a) { return a[0]; });
    return s;
}

inline const SymbolRef& div() {
    static const SymbolRef s = detail::binary(
        "div", Notation::div,
        [](std::span<const double> x) {
            if (x[1] == 0.0) throw DomainError("division by zero");
            return detail::checked(x[0] / x[1], "div");
        },
        [](std::span<const Term> a) { return light::div(constant(1), a[1]); },
        [](std::span<const Term> a) { return light::neg(light::div(a[0], light::pow_const(a[1], 2))); });
    return s;
}

inline const SymbolRef& neg() {
    static const SymbolRef s = [] {
        Symbol sym;
        sym.name = "neg";
        sym.arity = 1;
        sym.eval = [](std::span<const double> x) { return -x[0]; };
        sym.partials = {detail::const_partial(-1)};
        sym.notation = Notation::neg;
        return make_symbol(std::move(sym));
    }();
    return s;
}

/// Binary power; smooth on a positive base only.
inline const SymbolRef& pow() {
    static const SymbolRef s = detail::binary(
        "pow", Notation::power,
        [](std::span<const double> x) {
            if (x[0] <= 0.0) throw DomainError("pow needs a positive base");
            return detail::checked(std::pow(x[0], x[1]), "pow");
        },
        [](std::span<const Term> a) { return light::mul(a[1], light::pow(a[0], light::sub(a[1], constant(1)))); },
        [](std::span<const Term> a) { return light::mul(light::pow(a[0], a[1]), light::call(ln(), a[0])); });
    return s;
}

/// x^k for a fixed natural k; smooth everywhere.
inline SymbolRef pow_const(unsigned k) {
    Symbol sym;
    sym.name = "pow_const";
    sym.arity = 1;
    sym.parameter = k;
    sym.notation = Notation::power_const;
    sym.eval = [k](std::span<const double> x) { return detail::checked(std::pow(x[0], static_cast<double>(k)), "pow"); };
    sym.partials = {[k](std::span<const Term> a) -> Term {
        if (k == 0) return constant(0);
        if (k == 1) return constant(1);
        if (k == 2) return light::mul(constant(2), a[0]);
        return light::mul(constant(k), light::pow_const(a[0], k - 1));
    }};
    return make_symbol(std::move(sym));
}

inline const SymbolRef& exp() {
    static const SymbolRef s = detail::unary("exp", [](double x) { return std::exp(x); },
                                             [](std::span<const Term> a) { return light::call(exp(), a[0]); });
    return s;
}

inline const SymbolRef& ln() {
    static const SymbolRef s = [] {
        Symbol sym;
        sym.name = "ln";
        sym.arity = 1;
        sym.eval = [](std::span<const double> x) {
            if (x[0] <= 0.0) throw DomainError("ln of a non-positive value");
            return std::log(x[0]);
        };
        sym.partials = {[](std::span<const Term> a) { return light::div(constant(1), a[0]); }};
        return make_symbol(std::move(sym));
    }();
    return s;
}

inline const SymbolRef& sin() {
    static const SymbolRef s = detail::unary("sin", [](double x) { return std::sin(x); },
                                             [](std::span<const Term> a) { return light::call(cos(), a[0]); });
    return s;
}

inline const SymbolRef& cos() {
    static const SymbolRef s = detail::unary("cos", [](double x) { return std::cos(x); }, [](std::span<const Term> a) {
        return light::neg(light::call(sin(), a[0]));
    });
    return s;
}

/// |x|: registered, but not smooth, so it blocks differentiation.
inline const SymbolRef& abs() {
    static const SymbolRef s = detail::unary(
        "abs", [](double x) { return std::fabs(x); },
        [](std::span<const Term>) -> Term { throw NotDifferentiable("abs"); }, false);
    return s;
}

inline const SymbolRef& identity() {
    static const SymbolRef s =
        detail::unary("identity", [](double x) { return x; }, detail::const_partial(1));
    return s;
}

} // namespace symbols

// ---------------------------------------------------------------------------
// Generic unary functions f, f', f'', ...
// ---------------------------------------------------------------------------

/// One component c * sin(w x + phase) of a generic function's interpretation.
struct Wave {
    double amplitude;
    double frequency;
    double phase;
};

/// A named smooth unary function with all derivatives available, interpreted
/// as a fixed sum of sinusoids so each derivative level has a distinct,
/// consistent numeric meaning.
struct GenericFunction {
    std::string name;
    std::vector<Wave> waves;
};

inline SymbolRef generic_symbol(std::shared_ptr<const GenericFunction> fn, unsigned level) {
    Symbol sym;
    sym.name = fn->name + std::string(level, '\'');
    sym.arity = 1;
    sym.parameter = 0;
    sym.eval = [fn, level](std::span<const double> x) {
        double acc = 0.0;
        const double shift = level * std::numbers::pi / 2;
        for (const auto& w : fn->waves)
            acc += w.amplitude * std::pow(w.frequency, level) * std::sin(w.frequency * x[0] + w.phase + shift);
        return acc;
    };
    sym.partials = {[fn, level](std::span<const Term> a) {
        return Term::apply(generic_symbol(fn, level + 1), {a[0]});
    }};
    return make_symbol(std::move(sym));
}

// ---------------------------------------------------------------------------
// Registry
// ---------------------------------------------------------------------------

/// Name -> symbol table. Copy `builtin()` and `define` more symbols to extend.
class Registry {
public:
    Registry() = default;

    /// Every built-in symbol plus generic functions f, g, h. Immutable.
    static const Registry& builtin() {
        static const Registry r = [] {
            Registry reg;
            for (const auto* s : {&symbols::add(), &symbols::sub(), &symbols::mul(), &symbols::div(),
                                  &symbols::neg(), &symbols::pow(), &symbols::exp(), &symbols::ln(),
                                  &symbols::sin(), &symbols::cos(), &symbols::abs(), &symbols::identity()})
                reg.define(*s);
            reg.define_generic({"f", {{1.0, 1.0, 0.3}, {0.5, 1.7, 1.1}, {0.25, 2.3, -0.4}}});
            reg.define_generic({"g", {{0.8, 0.9, -0.7}, {0.6, 1.4, 0.2}, {0.3, 2.1, 1.3}}});
            reg.define_generic({"h", {{1.2, 0.6, 0.9}, {0.4, 1.9, -1.2}, {0.2, 2.7, 0.5}}});
            return reg;
        }();
        return r;
    }

    void define(SymbolRef s) { symbols_[s->name] = std::move(s); }

    void define_generic(GenericFunction fn) {
        auto name = fn.name;
        generics_[name] = std::make_shared<const GenericFunction>(std::move(fn));
    }

    /// Looks up a call-syntax name. `f''` resolves to the second derivative of
    /// generic `f`. Returns null when unknown.
    SymbolRef find(std::string_view name) const {
        if (auto it = symbols_.find(std::string(name)); it != symbols_.end()) return it->second;
        const auto primes = name.find('\'');
        const auto base = name.substr(0, primes);
        const unsigned level = primes == std::string_view::npos ? 0 : static_cast<unsigned>(name.size() - primes);
        if (primes != std::string_view::npos && name.find_first_not_of('\'', primes) != std::string_view::npos)
            return nullptr;
        if (auto it = generics_.find(std::string(base)); it != generics_.end()) return generic_symbol(it->second, level);
        return nullptr;
    }

    bool is_generic(std::string_view base) const { return generics_.count(std::string(base)) != 0; }

private:
    std::map<std::string, SymbolRef, std::less<>> symbols_;
    std::map<std::string, std::shared_ptr<const GenericFunction>, std::less<>> generics_;
};

/// Application of a generic function's `level`-th derivative, e.g. f''(x0).
inline Term generic(std::string_view name, unsigned level, Term arg, const Registry& reg = Registry::builtin()) {
    auto s = reg.find(std::string(name) + std::string(level, '\''));
    if (!s) throw UnknownSymbol(std::string(name));
    return Term::apply(std::move(s), {std::move(arg)});
}

} // namespace dcalc
