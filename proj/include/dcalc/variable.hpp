#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <stdexcept>

namespace dcalc {

/// Which operator generated a non-precalculus variable: d (differentials) or
/// the forward difference (difference variables Dx, D^2 x, ...).
enum class Family : std::uint8_t { differential = 0, difference = 1 };

/// The variable d^order x_base (or D^order x_base for the difference family).
///
/// Identity is the triple (base, order, family), so d^n v == d^m w forces n == m
/// and v == w. Order-0 variables always belong to the differential family.
class Variable {
public:
    constexpr Variable() = default;
    constexpr Variable(std::uint32_t base, std::uint32_t order, Family family = Family::differential)
        : base_(base), order_(order), family_(order == 0 ? Family::differential : family) {}

    constexpr std::uint32_t base() const noexcept { return base_; }
    constexpr std::uint32_t order() const noexcept { return order_; }
    constexpr Family family() const noexcept { return family_; }

    constexpr bool is_precalculus() const noexcept { return order_ == 0; }
    constexpr bool is_differential() const noexcept { return order_ > 0 && family_ == Family::differential; }
    constexpr bool is_difference() const noexcept { return order_ > 0 && family_ == Family::difference; }

    /// The precalculus variable this one was generated from.
    constexpr Variable root() const noexcept { return Variable{base_, 0}; }

    constexpr bool operator==(const Variable&) const = default;

    // OFV order: differential order first, then family, then base index.
    constexpr std::strong_ordering operator<=>(const Variable& other) const noexcept {
        if (auto c = order_ <=> other.order_; c != 0) return c;
        if (auto c = family_ <=> other.family_; c != 0) return c;
        return base_ <=> other.base_;
    }

private:
    std::uint32_t base_ = 0;
    std::uint32_t order_ = 0;
    Family family_ = Family::differential;
};

constexpr Variable mk_var(std::uint32_t base, std::uint32_t order = 0) noexcept { return Variable{base, order}; }

/// d v: same base, one more differential order.
inline Variable d_var(const Variable& v) {
    if (v.is_difference()) throw std::invalid_argument("d is not defined on difference variables");
    return Variable{v.base(), v.order() + 1};
}

/// D^k x_base, the k-th formal difference variable of x_base.
constexpr Variable mk_delta_var(std::uint32_t base, std::uint32_t k = 1) noexcept {
    return Variable{base, k, Family::difference};
}

} // namespace dcalc

template <>
struct std::hash<dcalc::Variable> {
    std::size_t operator()(const dcalc::Variable& v) const noexcept {
        return (static_cast<std::size_t>(v.base()) * 0x9E3779B1u) ^
               (static_cast<std::size_t>(v.order()) << 33) ^ static_cast<std::size_t>(v.family());
    }
};
