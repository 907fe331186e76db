#pragma once

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "error.hpp"
#include "variable.hpp"

namespace dcalc {

class Term;
struct Symbol;
using SymbolRef = std::shared_ptr<const Symbol>;

using Evaluator = std::function<double(std::span<const double>)>;
using PartialBuilder = std::function<Term(std::span<const Term>)>;

/// How a symbol is written in surface syntax.
enum class Notation { call, add, sub, mul, div, neg, power_const, power };

/// A registered n-ary function symbol.
///
/// `partials[j]` maps argument terms (T_1..T_n) to the term for D_j f applied to
/// them. `smooth` marks symbols that are everywhere infinitely differentiable on
/// their domain; differentiation refuses anything else.
struct Symbol {
    std::string name;
    std::size_t arity = 1;
    Evaluator eval;
    std::vector<PartialBuilder> partials;
    bool smooth = true;
    Notation notation = Notation::call;
    double parameter = 0.0; // exponent for pow_const
};

inline bool same_symbol(const Symbol& a, const Symbol& b) noexcept {
    return &a == &b || (a.name == b.name && a.parameter == b.parameter && a.arity == b.arity);
}

inline SymbolRef make_symbol(Symbol s) {
    if (s.arity == 0) throw std::invalid_argument("symbol '" + s.name + "' must have positive arity");
    if (s.partials.size() != s.arity)
        throw std::invalid_argument("symbol '" + s.name + "' needs one partial builder per argument");
    if (!s.eval) throw std::invalid_argument("symbol '" + s.name + "' has no evaluator");
    return std::make_shared<const Symbol>(std::move(s));
}

/// Immutable term tree: a real constant, a variable, or f(args...).
///
/// Copies share structure. Equality is structural.
class Term {
public:
    enum class Kind : unsigned char { constant, variable, application };

    Term() : Term(constant(0.0)) {}

    static Term constant(double value);
    static Term variable(Variable v);
    static Term apply(SymbolRef fn, std::vector<Term> args);

    Kind kind() const noexcept;
    bool is_constant() const noexcept { return kind() == Kind::constant; }
    bool is_variable() const noexcept { return kind() == Kind::variable; }
    bool is_application() const noexcept { return kind() == Kind::application; }
    bool is_constant(double v) const noexcept { return is_constant() && value() == v; }

    double value() const;
    const Variable& var() const;
    const Symbol& symbol() const;
    const SymbolRef& symbol_ref() const;
    std::span<const Term> args() const;

    /// Node count of the tree (shared subtrees counted once per occurrence).
    std::size_t size() const noexcept;
    std::size_t hash() const noexcept;

    /// Identity of the underlying node; equal ids imply equal terms.
    const void* id() const noexcept { return node_.get(); }

    friend bool operator==(const Term& a, const Term& b);

private:
    struct Node;
    explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

struct Term::Node {
    Kind kind;
    double value = 0.0;
    Variable var{};
    SymbolRef fn;
    std::vector<Term> args;
    std::size_t hash = 0;
    std::size_t size = 1;
};

namespace detail {
inline std::size_t hash_mix(std::size_t seed, std::size_t v) noexcept {
    return seed ^ (v + 0x9E3779B97F4A7C15ull + (seed << 6) + (seed >> 2));
}
} // namespace detail

inline Term Term::constant(double value) {
    if (!std::isfinite(value)) throw DomainError("constant must be finite");
    auto n = std::make_shared<Node>();
    n->kind = Kind::constant;
    n->value = value == 0.0 ? 0.0 : value; // fold -0 into +0
    n->hash = detail::hash_mix(1, std::hash<double>{}(n->value));
    return Term(std::move(n));
}

inline Term Term::variable(Variable v) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::variable;
    n->var = v;
    n->hash = detail::hash_mix(2, std::hash<Variable>{}(v));
    return Term(std::move(n));
}

inline Term Term::apply(SymbolRef fn, std::vector<Term> args) {
    if (!fn) throw std::invalid_argument("null function symbol");
    if (args.size() != fn->arity) throw ArityMismatch(fn->name, fn->arity, args.size());
    auto n = std::make_shared<Node>();
    n->kind = Kind::application;
    std::size_t h = detail::hash_mix(3, std::hash<std::string>{}(fn->name));
    h = detail::hash_mix(h, std::hash<double>{}(fn->parameter));
    for (const auto& a : args) {
        h = detail::hash_mix(h, a.hash());
        n->size += a.size();
    }
    n->hash = h;
    n->fn = std::move(fn);
    n->args = std::move(args);
    return Term(std::move(n));
}

inline Term::Kind Term::kind() const noexcept { return node_->kind; }

inline double Term::value() const {
    if (!is_constant()) throw std::logic_error("term is not a constant");
    return node_->value;
}

inline const Variable& Term::var() const {
    if (!is_variable()) throw std::logic_error("term is not a variable");
    return node_->var;
}

inline const Symbol& Term::symbol() const {
    if (!is_application()) throw std::logic_error("term is not an application");
    return *node_->fn;
}

inline const SymbolRef& Term::symbol_ref() const {
    if (!is_application()) throw std::logic_error("term is not an application");
    return node_->fn;
}

inline std::span<const Term> Term::args() const { return node_->args; }
inline std::size_t Term::size() const noexcept { return node_->size; }
inline std::size_t Term::hash() const noexcept { return node_->hash; }

inline bool operator==(const Term& a, const Term& b) {
    if (a.node_ == b.node_) return true;
    if (a.node_->hash != b.node_->hash || a.node_->kind != b.node_->kind) return false;
    switch (a.kind()) {
    case Term::Kind::constant: return a.node_->value == b.node_->value;
    case Term::Kind::variable: return a.node_->var == b.node_->var;
    case Term::Kind::application:
        if (!same_symbol(*a.node_->fn, *b.node_->fn)) return false;
        return std::equal(a.node_->args.begin(), a.node_->args.end(), b.node_->args.begin(),
                          b.node_->args.end());
    }
    return false;
}

/// Total structural order: constants < variables < applications, then by
/// payload. Used wherever output must be deterministic.
inline std::weak_ordering compare(const Term& a, const Term& b) {
    if (a.id() == b.id()) return std::weak_ordering::equivalent;
    if (a.kind() != b.kind()) return a.kind() <=> b.kind();
    switch (a.kind()) {
    case Term::Kind::constant: {
        const double x = a.value(), y = b.value();
        return x < y ? std::weak_ordering::less : (y < x ? std::weak_ordering::greater : std::weak_ordering::equivalent);
    }
    case Term::Kind::variable: return a.var() <=> b.var();
    case Term::Kind::application: {
        const auto& f = a.symbol();
        const auto& g = b.symbol();
        if (auto c = f.name <=> g.name; c != 0) return c;
        if (f.parameter != g.parameter)
            return f.parameter < g.parameter ? std::weak_ordering::less : std::weak_ordering::greater;
        const auto xs = a.args();
        const auto ys = b.args();
        for (std::size_t i = 0; i < xs.size() && i < ys.size(); ++i)
            if (auto c = compare(xs[i], ys[i]); c != 0) return c;
        return xs.size() <=> ys.size();
    }
    }
    return std::weak_ordering::equivalent;
}

struct TermLess {
    bool operator()(const Term& a, const Term& b) const { return compare(a, b) < 0; }
};

inline Term var(std::uint32_t base, std::uint32_t order = 0) { return Term::variable(mk_var(base, order)); }
inline Term var(Variable v) { return Term::variable(v); }
inline Term constant(double v) { return Term::constant(v); }

// ---------------------------------------------------------------------------
// Structural queries
// ---------------------------------------------------------------------------

namespace detail {
inline void collect_free_vars(const Term& t, std::set<Variable>& out) {
    switch (t.kind()) {
    case Term::Kind::constant: return;
    case Term::Kind::variable: out.insert(t.var()); return;
    case Term::Kind::application:
        for (const auto& a : t.args()) collect_free_vars(a, out);
        return;
    }
}
} // namespace detail

inline std::set<Variable> free_vars(const Term& t) {
    std::set<Variable> out;
    detail::collect_free_vars(t, out);
    return out;
}

/// Free variables sorted by (order, base): all precalculus variables first.
inline std::vector<Variable> ordered_free_vars(const Term& t) {
    const auto fv = free_vars(t);
    return {fv.begin(), fv.end()}; // std::set already iterates in OFV order
}

inline bool occurs(const Term& t, const Variable& v) {
    switch (t.kind()) {
    case Term::Kind::constant: return false;
    case Term::Kind::variable: return t.var() == v;
    case Term::Kind::application:
        return std::any_of(t.args().begin(), t.args().end(), [&](const Term& a) { return occurs(a, v); });
    }
    return false;
}

/// T itself, then the subterms of each argument (pre-order, with repetition).
inline std::vector<Term> subterms(const Term& t) {
    std::vector<Term> out;
    std::vector<Term> stack{t};
    while (!stack.empty()) {
        Term cur = std::move(stack.back());
        stack.pop_back();
        out.push_back(cur);
        if (cur.is_application()) {
            const auto args = cur.args();
            for (auto it = args.rbegin(); it != args.rend(); ++it) stack.push_back(*it);
        }
    }
    return out;
}

/// First application node whose head symbol is not smooth, if any.
inline std::optional<Term> first_non_smooth(const Term& t) {
    if (!t.is_application()) return std::nullopt;
    if (!t.symbol().smooth) return t;
    for (const auto& a : t.args())
        if (auto bad = first_non_smooth(a)) return bad;
    return std::nullopt;
}

/// Closed-world proxy: every application subterm has a smooth head symbol.
inline bool is_strongly_differentiable(const Term& t) { return !first_non_smooth(t).has_value(); }

} // namespace dcalc

template <>
struct std::hash<dcalc::Term> {
    std::size_t operator()(const dcalc::Term& t) const noexcept { return t.hash(); }
};
