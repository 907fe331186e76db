#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <vector>

#include "term.hpp"

namespace dcalc {

/// A total map from variables to reals: explicit bindings plus a default.
class Assignment {
public:
    Assignment() = default;
    explicit Assignment(double fallback) : default_(fallback) {}
    Assignment(std::initializer_list<std::pair<const Variable, double>> bindings, double fallback = 0.0)
        : bindings_(bindings), default_(fallback) {}

    double operator()(const Variable& v) const {
        const auto it = bindings_.find(v);
        return it == bindings_.end() ? default_ : it->second;
    }

    /// s(w|r): identical to *this except that w maps to r.
    Assignment shift(const Variable& w, double r) const {
        Assignment out = *this;
        out.bindings_[w] = r;
        return out;
    }

    void bind(const Variable& v, double r) { bindings_[v] = r; }

    double fallback() const noexcept { return default_; }
    const std::map<Variable, double>& bindings() const noexcept { return bindings_; }

    /// Extensional equality restricted to the given variables and the default.
    bool agrees_on(const Assignment& other, const std::set<Variable>& vars) const {
        for (const auto& v : vars)
            if ((*this)(v) != other(v)) return false;
        return true;
    }

private:
    std::map<Variable, double> bindings_;
    double default_ = 0.0;
};

inline Assignment shift(const Assignment& s, const Variable& w, double r) { return s.shift(w, r); }

/// T^s. Throws DomainError if any primitive is evaluated outside its domain.
inline double interpret(const Term& t, const Assignment& s) {
    switch (t.kind()) {
    case Term::Kind::constant: return t.value();
    case Term::Kind::variable: return s(t.var());
    case Term::Kind::application: {
        const auto args = t.args();
        const auto& fn = t.symbol();
        if (args.size() <= 4) {
            std::array<double, 4> xs{};
            for (std::size_t i = 0; i < args.size(); ++i) xs[i] = interpret(args[i], s);
            const double v = fn.eval(std::span<const double>(xs.data(), args.size()));
            if (!std::isfinite(v)) throw DomainError(fn.name + " produced a non-finite value");
            return v;
        }
        std::vector<double> xs;
        xs.reserve(args.size());
        for (const auto& a : args) xs.push_back(interpret(a, s));
        const double v = fn.eval(xs);
        if (!std::isfinite(v)) throw DomainError(fn.name + " produced a non-finite value");
        return v;
    }
    }
    return 0.0;
}

struct EquivConfig {
    std::size_t samples = 100;
    double tolerance = 1e-9;       // relative
    double absolute_floor = 1e-12; // differences below this always pass
    double lo = -2.0;
    double hi = 2.0;
    std::uint64_t seed = 0x5eed;
    std::size_t max_retries = 10; // resamples after a domain error

    void validate() const {
        if (samples < 1) throw std::invalid_argument("EquivConfig: samples must be >= 1");
        if (!(tolerance >= 0)) throw std::invalid_argument("EquivConfig: tolerance must be >= 0");
        if (!(lo < hi)) throw std::invalid_argument("EquivConfig: empty sampling range");
    }
};

/// |a - b| within `tol` relative to the larger magnitude, or below `floor`.
inline bool close_enough(double a, double b, double tol, double floor) {
    const double diff = std::fabs(a - b);
    return diff <= floor || diff <= tol * std::max(std::fabs(a), std::fabs(b));
}

struct Counterexample {
    Assignment assignment;
    double lhs = 0.0;
    double rhs = 0.0;
};

struct Verdict {
    enum class Kind { equivalent, counterexample, inconclusive };

    Kind kind = Kind::equivalent;
    std::optional<Counterexample> witness;
    std::size_t samples = 0;         // samples that were compared
    std::size_t domain_failures = 0; // samples abandoned after retries

    bool equivalent() const noexcept { return kind == Kind::equivalent; }
};

/// Monte-Carlo check of T ≡ U: deterministic in cfg.seed, independent of
/// argument order.
inline Verdict semantic_equiv(const Term& t, const Term& u, const EquivConfig& cfg = {}) {
    cfg.validate();
    auto vars = free_vars(t);
    vars.merge(free_vars(u));
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> dist(cfg.lo, cfg.hi);

    Verdict out;
    for (std::size_t i = 0; i < cfg.samples; ++i) {
        bool done = false;
        for (std::size_t attempt = 0; attempt <= cfg.max_retries && !done; ++attempt) {
            Assignment s;
            for (const auto& v : vars) s.bind(v, dist(rng));
            double a = 0, b = 0;
            try {
                a = interpret(t, s);
                b = interpret(u, s);
            } catch (const DomainError&) {
                continue;
            }
            done = true;
            ++out.samples;
            if (!close_enough(a, b, cfg.tolerance, cfg.absolute_floor)) {
                out.kind = Verdict::Kind::counterexample;
                out.witness = Counterexample{std::move(s), a, b};
                return out;
            }
        }
        if (!done) ++out.domain_failures;
    }
    if (2 * out.domain_failures > cfg.samples) out.kind = Verdict::Kind::inconclusive;
    return out;
}

} // namespace dcalc
