#pragma once

#include <algorithm>
#include <compare>
#include <map>
#include <unordered_map>
#include <utility>
#include <vector>

#include "printer.hpp"
#include "registry.hpp"
#include "term.hpp"

namespace dcalc {

/// Commutative product of differential variables, kept as a sorted multiset.
class DiffMonomial {
public:
    DiffMonomial() = default;
    explicit DiffMonomial(std::vector<Variable> factors) : factors_(std::move(factors)) {
        for (const auto& v : factors_)
            if (!v.is_differential())
                throw std::invalid_argument("monomial factor " + to_string(v) + " is not a differential variable");
        std::sort(factors_.begin(), factors_.end());
    }
    DiffMonomial(std::initializer_list<Variable> factors) : DiffMonomial(std::vector<Variable>(factors)) {}

    /// v^n for a differential variable v.
    static DiffMonomial power(const Variable& v, std::size_t n) { return DiffMonomial(std::vector<Variable>(n, v)); }

    const std::vector<Variable>& factors() const noexcept { return factors_; }
    bool empty() const noexcept { return factors_.empty(); }

    std::size_t weight() const noexcept {
        std::size_t w = 0;
        for (const auto& v : factors_) w += v.order();
        return w;
    }

    DiffMonomial times(const DiffMonomial& other) const {
        DiffMonomial out;
        out.factors_.reserve(factors_.size() + other.factors_.size());
        std::merge(factors_.begin(), factors_.end(), other.factors_.begin(), other.factors_.end(),
                   std::back_inserter(out.factors_));
        return out;
    }

    bool operator==(const DiffMonomial&) const = default;

    // Lower weight first, then lexicographic in OFV order.
    std::strong_ordering operator<=>(const DiffMonomial& other) const {
        if (auto c = weight() <=> other.weight(); c != 0) return c;
        return std::lexicographical_compare_three_way(factors_.begin(), factors_.end(), other.factors_.begin(),
                                                      other.factors_.end());
    }

    Term to_term() const {
        if (factors_.empty()) return constant(1);
        Term acc = Term::variable(factors_.front());
        for (std::size_t i = 1; i < factors_.size(); ++i) acc = mul(acc, Term::variable(factors_[i]));
        return acc;
    }

private:
    std::vector<Variable> factors_;
};

inline std::size_t weight(const DiffMonomial& m) { return m.weight(); }

namespace detail {

/// (negative?, magnitude) for a coefficient term: -X, a negative constant, or
/// a product led by one of those.
inline std::pair<bool, Term> split_sign(const Term& t) {
    if (t.is_constant() && t.value() < 0) return {true, constant(-t.value())};
    if (t.is_application() && t.symbol().notation == Notation::neg) return {true, t.args()[0]};
    if (t.is_application() && t.symbol().notation == Notation::mul) {
        auto [negative, mag] = split_sign(t.args()[0]);
        if (negative) return {true, mag.is_constant(1) ? t.args()[1] : mul(mag, t.args()[1])};
    }
    return {false, t};
}

inline Term times_monomial(const Term& coefficient, const DiffMonomial& m) {
    if (m.empty()) return coefficient;
    if (coefficient.is_constant(1)) return m.to_term();
    Term acc = coefficient;
    for (const auto& v : m.factors()) acc = mul(acc, Term::variable(v));
    return acc;
}

} // namespace detail

/// Σ coefficient × monomial, each coefficient free of differential variables.
struct DiffPolynomial {
    std::map<DiffMonomial, Term> rows;

    Term coefficient(const DiffMonomial& m) const {
        const auto it = rows.find(m);
        return it == rows.end() ? constant(0) : it->second;
    }

    /// Reassembles the polynomial, rows in monomial order, negative rows
    /// written as subtractions.
    Term to_term() const {
        std::optional<Term> acc;
        for (const auto& [m, coef] : rows) {
            if (!acc) {
                acc = detail::times_monomial(coef, m);
                continue;
            }
            auto [negative, mag] = detail::split_sign(coef);
            acc = negative ? sub(*acc, detail::times_monomial(mag, m)) : add(*acc, detail::times_monomial(coef, m));
        }
        return acc.value_or(constant(0));
    }
};

namespace detail {

// A product of coefficient atoms raised to powers, sorted by atom.
using AtomPowers = std::vector<std::pair<Term, unsigned>>;

struct ExpansionKey {
    DiffMonomial monomial;
    AtomPowers atoms;
};

struct ExpansionKeyLess {
    bool operator()(const ExpansionKey& a, const ExpansionKey& b) const {
        if (auto c = a.monomial <=> b.monomial; c != 0) return c < 0;
        const auto n = std::min(a.atoms.size(), b.atoms.size());
        for (std::size_t i = 0; i < n; ++i) {
            if (auto c = compare(a.atoms[i].first, b.atoms[i].first); c != 0) return c < 0;
            if (a.atoms[i].second != b.atoms[i].second) return a.atoms[i].second < b.atoms[i].second;
        }
        return a.atoms.size() < b.atoms.size();
    }
};

using Poly = std::map<ExpansionKey, double, ExpansionKeyLess>;

inline AtomPowers merge_atoms(const AtomPowers& a, const AtomPowers& b) {
    AtomPowers out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && compare(a[i].first, b[j].first) < 0)) {
            out.push_back(a[i++]);
        } else if (i == a.size() || compare(b[j].first, a[i].first) < 0) {
            out.push_back(b[j++]);
        } else {
            out.emplace_back(a[i].first, a[i].second + b[j].second);
            ++i;
            ++j;
        }
    }
    return out;
}

inline void accumulate(Poly& p, const ExpansionKey& key, double c) {
    auto [it, inserted] = p.try_emplace(key, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0.0) p.erase(it);
    } else if (c == 0.0) {
        p.erase(it);
    }
}

inline Poly poly_add(Poly a, const Poly& b, double scale = 1.0) {
    for (const auto& [k, c] : b) accumulate(a, k, scale * c);
    return a;
}

inline Poly poly_mul(const Poly& a, const Poly& b) {
    Poly out;
    for (const auto& [ka, ca] : a)
        for (const auto& [kb, cb] : b)
            accumulate(out, ExpansionKey{ka.monomial.times(kb.monomial), merge_atoms(ka.atoms, kb.atoms)}, ca * cb);
    return out;
}

inline Poly poly_constant(double c) {
    Poly p;
    accumulate(p, ExpansionKey{}, c);
    return p;
}

inline Poly poly_atom(const Term& t) {
    Poly p;
    p.emplace(ExpansionKey{{}, {{t, 1u}}}, 1.0);
    return p;
}

constexpr unsigned max_expanded_power = 12;

class Expander {
public:
    Poly run(const Term& t) {
        switch (t.kind()) {
        case Term::Kind::constant: return poly_constant(t.value());
        case Term::Kind::variable:
            if (t.var().is_differential()) {
                Poly p;
                p.emplace(ExpansionKey{DiffMonomial{t.var()}, {}}, 1.0);
                return p;
            }
            return poly_atom(t);
        case Term::Kind::application: break;
        }
        const auto& fn = t.symbol();
        const auto args = t.args();
        switch (fn.notation) {
        case Notation::add: return poly_add(run(args[0]), run(args[1]));
        case Notation::sub: return poly_add(run(args[0]), run(args[1]), -1.0);
        case Notation::neg: return poly_add({}, run(args[0]), -1.0);
        case Notation::mul: return poly_mul(run(args[0]), run(args[1]));
        case Notation::power_const: {
            const auto k = static_cast<unsigned>(fn.parameter);
            if (k > max_expanded_power) {
                if (has_differential(t)) throw NotPolynomialInDifferentials(to_string(t));
                return poly_atom(t);
            }
            const Poly base = run(args[0]);
            Poly acc = poly_constant(1);
            for (unsigned i = 0; i < k; ++i) acc = poly_mul(acc, base);
            return acc;
        }
        case Notation::div: {
            if (has_differential(args[1])) throw NotPolynomialInDifferentials(to_string(t));
            if (!has_differential(args[0])) return poly_atom(t);
            if (args[1].is_constant()) return poly_add({}, run(args[0]), 1.0 / args[1].value());
            return poly_mul(run(args[0]), poly_atom(div(constant(1), args[1])));
        }
        case Notation::power:
        case Notation::call:
            if (has_differential(t)) throw NotPolynomialInDifferentials(to_string(t));
            return poly_atom(t);
        }
        return {};
    }

private:
    bool has_differential(const Term& t) {
        if (t.is_constant()) return false;
        if (t.is_variable()) return t.var().is_differential();
        if (auto it = memo_.find(t.id()); it != memo_.end()) return it->second;
        bool found = false;
        for (const auto& a : t.args())
            if (has_differential(a)) {
                found = true;
                break;
            }
        memo_.emplace(t.id(), found);
        return found;
    }

    std::unordered_map<const void*, bool> memo_;
};

inline Term atoms_product(const AtomPowers& atoms) {
    std::optional<Term> acc;
    for (const auto& [atom, p] : atoms) {
        Term f = p == 1 ? atom : pow_const(atom, p);
        acc = acc ? mul(*acc, f) : f;
    }
    return acc.value_or(constant(1));
}

inline Term scaled(double scalar, const AtomPowers& atoms) {
    if (atoms.empty()) return constant(scalar);
    Term prod = atoms_product(atoms);
    if (scalar == 1.0) return prod;
    if (scalar == -1.0) return neg(prod);
    return mul(constant(scalar), prod);
}

} // namespace detail

/// Normal form of a term polynomial in its differential variables. Throws
/// NotPolynomialInDifferentials when a differential variable sits under a
/// non-polynomial operation.
inline DiffPolynomial expand(const Term& t) {
    const detail::Poly p = detail::Expander{}.run(t);
    std::map<DiffMonomial, std::vector<std::pair<double, detail::AtomPowers>>> grouped;
    for (const auto& [key, c] : p) grouped[key.monomial].emplace_back(c, key.atoms);

    DiffPolynomial out;
    for (const auto& [m, terms] : grouped) {
        std::optional<Term> coef;
        for (const auto& [c, atoms] : terms) {
            if (!coef) {
                coef = detail::scaled(c, atoms);
            } else if (c < 0) {
                coef = sub(*coef, detail::scaled(-c, atoms));
            } else {
                coef = add(*coef, detail::scaled(c, atoms));
            }
        }
        out.rows.emplace(m, *coef);
    }
    return out;
}

inline Term coefficient(const Term& t, const DiffMonomial& m) { return expand(t).coefficient(m); }

} // namespace dcalc
