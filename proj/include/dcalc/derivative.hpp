#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "registry.hpp"
#include "term.hpp"

namespace dcalc {

enum class SimplifyLevel { none, light };

struct SimplifyPolicy {
    SimplifyLevel level = SimplifyLevel::light;
};

/// Bottom-up light simplification: 0*T, T*0 -> 0; 1*T, T*1 -> T; T+0, 0+T -> T;
/// constant folding of applications whose arguments are all constants.
inline Term simplify(const Term& t, SimplifyPolicy policy = {}) {
    if (policy.level == SimplifyLevel::none || !t.is_application()) return t;
    std::vector<Term> args;
    args.reserve(t.args().size());
    bool changed = false;
    for (const auto& a : t.args()) {
        args.push_back(simplify(a, policy));
        changed = changed || args.back().id() != a.id();
    }
    Term out = light::apply(t.symbol_ref(), std::move(args));
    if (!changed && out == t) return t;
    return out;
}

namespace detail {

inline void require_strongly_differentiable(const Term& t, std::optional<std::size_t> level = std::nullopt) {
    if (auto bad = first_non_smooth(t)) throw NotDifferentiable(bad->symbol().name, level);
}

// Term chain rule: d f(T_1..T_n)/dw = sum_j D_j f(T_1..T_n) * dT_j/dw.
inline Term partial_unchecked(const Term& t, const Variable& w) {
    switch (t.kind()) {
    case Term::Kind::constant: return constant(0);
    case Term::Kind::variable: return constant(t.var() == w ? 1 : 0);
    case Term::Kind::application: break;
    }
    const auto& fn = t.symbol();
    const auto args = t.args();
    Term acc = constant(0);
    for (std::size_t j = 0; j < args.size(); ++j) {
        Term inner = partial_unchecked(args[j], w);
        if (inner.is_constant(0)) continue;
        acc = light::add(acc, light::mul(fn.partials[j](args), inner));
    }
    return acc;
}

inline Term total_differential_unchecked(const Term& t) {
    Term acc = constant(0);
    for (const auto& v : ordered_free_vars(t)) {
        Term summand = light::mul(partial_unchecked(t, v), Term::variable(d_var(v)));
        acc = light::add(acc, summand);
    }
    return acc;
}

} // namespace detail

/// ∂T/∂w as a term. Throws NotDifferentiable if T has a non-smooth subterm.
inline Term partial(const Term& t, const Variable& w) {
    detail::require_strongly_differentiable(t);
    return detail::partial_unchecked(t, w);
}

/// dT = Σ_i ∂T/∂v_i · dv_i over OFV(T); 0 for closed terms.
inline Term total_differential(const Term& t) {
    detail::require_strongly_differentiable(t);
    return detail::total_differential_unchecked(t);
}

/// d^k T. NotDifferentiable reports the level at which the check failed.
inline Term iterated_differential(const Term& t, std::size_t k) {
    Term cur = t;
    for (std::size_t level = 0; level < k; ++level) {
        detail::require_strongly_differentiable(cur, level);
        cur = detail::total_differential_unchecked(cur);
    }
    return cur;
}

/// ∂^n T / ∂w_1 ... ∂w_n, differentiating by w_1 first.
inline Term iterated_partial(const Term& t, const std::vector<Variable>& wrt) {
    Term cur = t;
    for (const auto& w : wrt) cur = partial(cur, w);
    return cur;
}

} // namespace dcalc
