#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

#include "semantics.hpp"

// Finite-difference ground truth for the symbolic routes.

namespace dcalc {

struct FDConfig {
    double step = 1e-5;
    unsigned richardson_levels = 2;

    void validate() const {
        if (!(step > 0)) throw std::invalid_argument("FDConfig: step must be positive");
        if (richardson_levels > 4) throw std::invalid_argument("FDConfig: at most 4 Richardson levels");
    }
};

namespace detail {

// Richardson table over estimates at h, h/2, h/4, ... for a scheme whose error
// expands in even powers of h.
inline double richardson(const std::function<double(double)>& estimate, double h, unsigned levels) {
    std::vector<double> row(levels + 1);
    for (unsigned j = 0; j <= levels; ++j) row[j] = estimate(h / std::ldexp(1.0, static_cast<int>(j)));
    for (unsigned i = 1; i <= levels; ++i) {
        const double f = std::ldexp(1.0, 2 * static_cast<int>(i)); // 4^i
        for (unsigned j = 0; j + i <= levels; ++j) row[j] = (f * row[j + 1] - row[j]) / (f - 1);
    }
    return row[0];
}

inline double binomial(unsigned n, unsigned k) {
    double r = 1;
    for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// n-th central difference quotient of F at x with spacing h.
inline double central_difference(const std::function<double(double)>& F, unsigned n, double x, double h) {
    double acc = 0;
    for (unsigned i = 0; i <= n; ++i) {
        const double offset = (static_cast<double>(n) / 2 - i) * h;
        acc += (i % 2 ? -1.0 : 1.0) * binomial(n, i) * F(x + offset);
    }
    return acc / std::pow(h, n);
}

} // namespace detail

/// Estimate of lim (T^{s(w|s(w)+h)} − T^s)/h by central differences.
inline double fd_partial(const Term& t, const Variable& w, const Assignment& s, const FDConfig& cfg = {}) {
    cfg.validate();
    const double at = s(w);
    const double h = cfg.step * std::max(1.0, std::fabs(at));
    auto F = [&](double z) { return interpret(t, s.shift(w, z)); };
    return detail::richardson(
        [&](double step) { return detail::central_difference(F, 1, at, 2 * step); }, h, cfg.richardson_levels);
}

/// (f∘g)^(n)(x0) by an n-th central difference. The base step is
/// eps^(1/(n+2+2L)) for L Richardson levels, which for L = 0 is the classic
/// eps^(1/(n+2)) balance of truncation against rounding.
inline double fd_nth_composition(const std::function<double(double)>& f, const std::function<double(double)>& g,
                                 unsigned n, double x0, const FDConfig& cfg = {}) {
    cfg.validate();
    auto F = [&](double z) {
        const double v = f(g(z));
        if (!std::isfinite(v)) throw DomainError("composition is not finite near the stencil");
        return v;
    };
    if (n == 0) return F(x0);
    const double eps = std::numeric_limits<double>::epsilon();
    const double h = std::pow(eps, 1.0 / (n + 2 + 2 * cfg.richardson_levels)) * std::max(1.0, std::fabs(x0));
    return detail::richardson([&](double step) { return detail::central_difference(F, n, x0, step); }, h,
                              cfg.richardson_levels);
}

/// ∂^n T / ∂w_1 ⋯ ∂w_n by nested central differences (no extrapolation).
inline double fd_mixed_partial(const Term& t, const std::vector<Variable>& wrt, const Assignment& s) {
    const double eps = std::numeric_limits<double>::epsilon();
    const double base = std::pow(eps, 1.0 / (wrt.size() + 2));
    std::function<double(std::size_t, const Assignment&)> rec = [&](std::size_t i, const Assignment& a) -> double {
        if (i == wrt.size()) return interpret(t, a);
        const auto& w = wrt[i];
        const double h = base * std::max(1.0, std::fabs(a(w)));
        return (rec(i + 1, a.shift(w, a(w) + h)) - rec(i + 1, a.shift(w, a(w) - h))) / (2 * h);
    };
    return rec(0, s);
}

} // namespace dcalc
