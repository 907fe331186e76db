#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "derivative.hpp"
#include "printer.hpp"
#include "semantics.hpp"
#include "substitution.hpp"

// Forward differences with formal difference variables: Δf(x) = f(x+Δx) - f(x),
// where Δx is bound to 1 when evaluating.

namespace dcalc {

/// A term over precalculus and difference variables only.
class DeltaTerm {
public:
    explicit DeltaTerm(Term t) : term_(std::move(t)) {
        for (const auto& v : free_vars(term_))
            if (v.is_differential())
                throw MixedVariables("difference term contains differential variable " + to_string(v));
    }

    const Term& term() const noexcept { return term_; }
    bool operator==(const DeltaTerm&) const = default;

private:
    Term term_;
};

inline Variable delta_var(const Variable& x, std::uint32_t k = 1) { return mk_delta_var(x.base(), k); }

/// ΔT = T[x ↦ x + Δx] − T, light-simplified.
inline DeltaTerm delta(const DeltaTerm& t, const Variable& x) {
    if (!x.is_precalculus()) throw OrderNotZero("Δ is taken with respect to a precalculus variable");
    const VarMap shift{{x, add(Term::variable(x), Term::variable(delta_var(x)))}};
    return DeltaTerm(simplify(sub(extend(shift, t.term()), t.term())));
}

inline DeltaTerm delta_power(const DeltaTerm& t, const Variable& x, unsigned k) {
    DeltaTerm cur = t;
    for (unsigned i = 0; i < k; ++i) cur = delta(cur, x);
    return cur;
}

/// T⟦x|G⟧: x ↦ G, Δ^k x ↦ Δ^k G. Constants are never touched.
inline DeltaTerm delta_subst(const DeltaTerm& t, const Variable& x, const DeltaTerm& g) {
    if (!x.is_precalculus()) throw OrderNotZero("⟦x|G⟧ substitutes for a precalculus variable");
    for (const auto& v : free_vars(g.term()))
        if (v.is_difference()) throw std::invalid_argument("the substituted term must be free of difference variables");
    VarMap phi0;
    phi0.set(x, g.term());
    std::uint32_t top = 0;
    for (const auto& v : free_vars(t.term()))
        if (v.is_difference() && v.base() == x.base()) top = std::max(top, v.order());
    DeltaTerm cur = g;
    for (std::uint32_t k = 1; k <= top; ++k) {
        cur = delta(cur, x);
        phi0.set(delta_var(x, k), cur.term());
    }
    return DeltaTerm(extend(phi0, t.term()));
}

/// Evaluates T at x = point with every Δ^k x bound to 1 (k = 1) and 0 (k > 1).
inline double evaluate_at(const DeltaTerm& t, const Variable& x, double point) {
    Assignment s;
    s.bind(x, point);
    for (const auto& v : free_vars(t.term()))
        if (v.is_difference() && v.base() == x.base()) s.bind(v, v.order() == 1 ? 1.0 : 0.0);
    return interpret(t.term(), s);
}

struct DeltaChainReport {
    struct Mismatch {
        std::int64_t point;
        double lhs;
        double rhs;
    };

    bool agree = true;
    std::optional<Mismatch> mismatch;
    DeltaTerm lhs{Term{}};
    DeltaTerm rhs{Term{}};
};

/// Δ(f⟦x|G⟧) vs (Δf)⟦x|G⟧ at each grid point, compared for exact equality.
inline DeltaChainReport check_delta_chain_rule(const DeltaTerm& f, const Variable& x, const DeltaTerm& g,
                                               const std::vector<std::int64_t>& grid) {
    DeltaChainReport report;
    report.lhs = delta(delta_subst(f, x, g), x);
    report.rhs = delta_subst(delta(f, x), x, g);
    for (const auto point : grid) {
        const double a = evaluate_at(report.lhs, x, static_cast<double>(point));
        const double b = evaluate_at(report.rhs, x, static_cast<double>(point));
        if (a != b) {
            report.agree = false;
            report.mismatch = DeltaChainReport::Mismatch{point, a, b};
            return report;
        }
    }
    return report;
}

inline std::vector<std::int64_t> integer_grid(std::int64_t lo, std::int64_t hi) {
    std::vector<std::int64_t> out;
    for (auto i = lo; i <= hi; ++i) out.push_back(i);
    return out;
}

} // namespace dcalc
