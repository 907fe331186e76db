#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "derivative.hpp"
#include "registry.hpp"
#include "substitution.hpp"

namespace dcalc {

/// A set partition of {1..n}; blocks ascend by least element, elements ascend
/// within each block.
struct Partition {
    std::vector<std::vector<unsigned>> blocks;

    std::size_t size() const noexcept { return blocks.size(); }
    bool operator==(const Partition&) const = default;
};

inline constexpr unsigned max_partition_size = 10;

/// Every partition of {1..n} exactly once, in restricted-growth-string order.
inline std::vector<Partition> partitions(unsigned n) {
    if (n > max_partition_size)
        throw TooLarge("partitions of {1.." + std::to_string(n) + "}: n is capped at " +
                       std::to_string(max_partition_size));
    std::vector<Partition> out;
    if (n == 0) {
        out.emplace_back();
        return out;
    }
    // rgs[i] is the block of element i+1; rgs[i] <= 1 + max(rgs[0..i-1]).
    std::vector<unsigned> rgs(n, 0), prefix_max(n, 0);
    while (true) {
        Partition p;
        p.blocks.resize(prefix_max[n - 1] + 1);
        for (unsigned i = 0; i < n; ++i) p.blocks[rgs[i]].push_back(i + 1);
        out.push_back(std::move(p));

        int i = static_cast<int>(n) - 1;
        while (i > 0 && rgs[i] > prefix_max[i - 1]) --i;
        if (i == 0) break;
        ++rgs[i];
        prefix_max[i] = std::max(prefix_max[i - 1], rgs[i]);
        for (unsigned j = i + 1; j < n; ++j) {
            rgs[j] = 0;
            prefix_max[j] = prefix_max[i];
        }
    }
    return out;
}

/// Resolves a unary symbol by name; `square` is x^2.
inline SymbolRef unary_symbol(std::string_view name, const Registry& reg = Registry::builtin()) {
    if (name == "square") return symbols::pow_const(2);
    auto s = reg.find(name);
    if (!s) throw UnknownSymbol(std::string(name));
    if (s->arity != 1) throw ArityMismatch(s->name, 1, s->arity);
    return s;
}

/// f^(k)(arg), obtained by differentiating f(y) k times with the registry's
/// partial builders and then substituting arg for y.
inline Term derivative_of(const SymbolRef& f, unsigned k, const Term& arg) {
    if (f->arity != 1) throw ArityMismatch(f->name, 1, f->arity);
    if (!f->smooth && k > 0) throw NotDifferentiable(f->name);
    const Variable y = mk_var(0);
    Term cur = Term::apply(f, {Term::variable(y)});
    for (unsigned i = 0; i < k; ++i) cur = partial(cur, y);
    return extend(VarMap{{y, arg}}, cur);
}

/// I(π) = f^(|π|)(x) · d^|B_1| x ··· d^|B_k| x.
inline Term i_of_partition(const SymbolRef& f, const Variable& x, const Partition& pi) {
    if (!x.is_precalculus()) throw OrderNotZero("I(pi) needs a precalculus variable");
    Term acc = derivative_of(f, static_cast<unsigned>(pi.size()), Term::variable(x));
    for (const auto& block : pi.blocks)
        acc = light::mul(acc, Term::variable(Variable{x.base(), static_cast<std::uint32_t>(block.size())}));
    return acc;
}

/// Σ_{π ∈ Π_n} I(π), which is d^n f(x).
inline Term partition_sum(const SymbolRef& f, const Variable& x, unsigned n) {
    std::vector<Term> parts;
    for (const auto& pi : partitions(n)) parts.push_back(i_of_partition(f, x, pi));
    return sum_of(parts);
}

/// (f∘g)^(n)(x) = Σ_π f^(|π|)(g(x)) · Π_{B∈π} g^(|B|)(x).
inline Term faa_nth_derivative(const SymbolRef& f, const SymbolRef& g, unsigned n, const Variable& x = mk_var(0)) {
    const auto all = partitions(n);
    const Term gx = Term::apply(g, {Term::variable(x)});
    std::vector<Term> outer(n + 1), inner(n + 1);
    for (unsigned k = 0; k <= n; ++k) {
        outer[k] = derivative_of(f, k, gx);
        inner[k] = derivative_of(g, k, Term::variable(x));
    }
    std::vector<Term> parts;
    for (const auto& pi : all) {
        Term acc = outer[pi.size()];
        for (const auto& block : pi.blocks) acc = light::mul(acc, inner[block.size()]);
        parts.push_back(acc);
    }
    return sum_of(parts);
}

} // namespace dcalc
