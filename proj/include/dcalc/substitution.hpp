#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "derivative.hpp"
#include "semantics.hpp"

namespace dcalc {

/// φ0: variables to terms. Unmapped variables go to themselves.
class VarMap {
public:
    VarMap() = default;
    VarMap(std::initializer_list<std::pair<const Variable, Term>> m) : map_(m) {}

    void set(const Variable& v, Term t) { map_.insert_or_assign(v, std::move(t)); }

    Term operator()(const Variable& v) const {
        const auto it = map_.find(v);
        return it == map_.end() ? Term::variable(v) : it->second;
    }

    bool empty() const noexcept { return map_.empty(); }
    const std::map<Variable, Term>& entries() const noexcept { return map_; }

private:
    std::map<Variable, Term> map_;
};

/// φ(T): replace every variable v by φ0(v), simultaneously, leaving constants
/// and function symbols alone.
inline Term extend(const VarMap& phi0, const Term& t) {
    switch (t.kind()) {
    case Term::Kind::constant: return t;
    case Term::Kind::variable: return phi0(t.var());
    case Term::Kind::application: break;
    }
    std::vector<Term> args;
    args.reserve(t.args().size());
    bool changed = false;
    for (const auto& a : t.args()) {
        args.push_back(extend(phi0, a));
        changed = changed || args.back().id() != a.id();
    }
    if (!changed) return t;
    return Term::apply(t.symbol_ref(), std::move(args));
}

/// φ(s): the assignment v ↦ φ0(v)^s, materialized on `vars`; other variables
/// keep s's value (φ0 is the identity there).
inline Assignment pushforward(const VarMap& phi0, const Assignment& s, const std::set<Variable>& vars) {
    Assignment out = s;
    for (const auto& v : vars) out.bind(v, interpret(phi0(v), s));
    return out;
}

struct RespectsReport {
    Verdict verdict;
    std::optional<Variable> failing; // first variable whose check did not pass
};

/// Checks φ0(dv) ≡ d φ0(v) for every v in `vars`.
inline RespectsReport respects_d(const VarMap& phi0, const std::set<Variable>& vars, const EquivConfig& cfg = {}) {
    RespectsReport report;
    for (const auto& v : vars) {
        const Verdict verdict = semantic_equiv(phi0(d_var(v)), total_differential(phi0(v)), cfg);
        if (!verdict.equivalent()) return {verdict, v};
        report.verdict.samples += verdict.samples;
        report.verdict.domain_failures += verdict.domain_failures;
    }
    return report;
}

/// Highest differential order of `v`'s base occurring in T, if any occurrence.
inline std::optional<std::uint32_t> max_differential_order(const Term& t, const Variable& v) {
    std::optional<std::uint32_t> best;
    for (const auto& w : free_vars(t))
        if (w.base() == v.base() && w.family() == Family::differential && (!best || w.order() > *best))
            best = w.order();
    return best;
}

/// The map x ↦ U, d^k x ↦ d^k U for k = 1..max_order.
inline VarMap differential_substitution(const Variable& v, const Term& u, std::uint32_t max_order) {
    if (!v.is_precalculus()) throw OrderNotZero("substitution variable must be precalculus (order 0)");
    VarMap phi0;
    phi0.set(v, u);
    Term cur = u;
    for (std::uint32_t k = 1; k <= max_order; ++k) {
        detail::require_strongly_differentiable(cur, k - 1);
        cur = detail::total_differential_unchecked(cur);
        phi0.set(Variable{v.base(), k}, cur);
    }
    return phi0;
}

/// T[v|U]: substitute U for v, d^k U for d^k v. Only the orders that occur in
/// T are differentiated.
inline Term subst_diff(const Term& t, const Variable& v, const Term& u) {
    if (!v.is_precalculus()) throw OrderNotZero("substitution variable must be precalculus (order 0)");
    const auto top = max_differential_order(t, v);
    if (!top) return t;
    return extend(differential_substitution(v, u, *top), t);
}

/// d^k(T[v|U]) ≡ (d^k T)[v|U], checked by sampling.
inline Verdict check_chain_rule(const Term& t, const Variable& v, const Term& u, std::size_t k,
                                const EquivConfig& cfg = {}) {
    const Term lhs = iterated_differential(subst_diff(t, v, u), k);
    const Term rhs = subst_diff(iterated_differential(t, k), v, u);
    return semantic_equiv(lhs, rhs, cfg);
}

} // namespace dcalc
