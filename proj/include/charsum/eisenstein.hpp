/**
 * @file eisenstein.hpp
 * @brief Exact arithmetic in Z[ω], ω² + ω + 1 = 0.
 */
#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <string>

namespace charsum {

namespace detail {

inline std::int64_t add_ov(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("integer overflow in exact arithmetic");
    return r;
}
inline std::int64_t sub_ov(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_sub_overflow(a, b, &r)) throw std::overflow_error("integer overflow in exact arithmetic");
    return r;
}
inline std::int64_t mul_ov(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("integer overflow in exact arithmetic");
    return r;
}

}  // namespace detail

/// a + bω. Overflow of the 64-bit coordinates throws std::overflow_error.
struct EisensteinInt {
    std::int64_t a = 0;
    std::int64_t b = 0;

    constexpr EisensteinInt() = default;
    constexpr EisensteinInt(std::int64_t a_, std::int64_t b_ = 0) : a(a_), b(b_) {}

    static constexpr EisensteinInt omega() { return {0, 1}; }

    /// ω^k for any integer k.
    static constexpr EisensteinInt omega_pow(std::int64_t k) {
        switch (((k % 3) + 3) % 3) {
            case 0: return {1, 0};
            case 1: return {0, 1};
            default: return {-1, -1};  // ω² = -1 - ω
        }
    }

    friend EisensteinInt operator+(EisensteinInt x, EisensteinInt y) {
        return {detail::add_ov(x.a, y.a), detail::add_ov(x.b, y.b)};
    }
    friend EisensteinInt operator-(EisensteinInt x, EisensteinInt y) {
        return {detail::sub_ov(x.a, y.a), detail::sub_ov(x.b, y.b)};
    }
    friend EisensteinInt operator-(EisensteinInt x) { return EisensteinInt{} - x; }
    friend EisensteinInt operator*(EisensteinInt x, EisensteinInt y) {
        using namespace detail;
        const std::int64_t bd = mul_ov(x.b, y.b);
        return {sub_ov(mul_ov(x.a, y.a), bd), sub_ov(add_ov(mul_ov(x.a, y.b), mul_ov(x.b, y.a)), bd)};
    }
    EisensteinInt& operator+=(EisensteinInt y) { return *this = *this + y; }
    EisensteinInt& operator-=(EisensteinInt y) { return *this = *this - y; }
    EisensteinInt& operator*=(EisensteinInt y) { return *this = *this * y; }

    friend constexpr bool operator==(EisensteinInt, EisensteinInt) = default;

    /// Complex conjugate: ω ↦ ω² = -1 - ω.
    EisensteinInt conj() const { return {detail::sub_ov(a, b), -b}; }

    std::int64_t norm() const {
        using namespace detail;
        return add_ov(sub_ov(mul_ov(a, a), mul_ov(a, b)), mul_ov(b, b));
    }

    /// True when the value lies in Z (zero ω-coordinate).
    bool is_rational() const noexcept { return b == 0; }

    /// x + conj(x) = 2a - b, always a rational integer.
    std::int64_t trace() const { return detail::sub_ov(detail::mul_ov(2, a), b); }

    std::string str() const { return std::to_string(a) + (b < 0 ? " - " : " + ") + std::to_string(b < 0 ? -b : b) + "ω"; }
};

inline std::ostream& operator<<(std::ostream& os, const EisensteinInt& x) { return os << x.str(); }

/// Approximate complex value; only for quantities outside Z[ω].
struct ComplexApprox {
    double re = 0.0;
    double im = 0.0;

    double abs2() const noexcept { return re * re + im * im; }
    friend ComplexApprox operator*(ComplexApprox x, ComplexApprox y) {
        return {x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re};
    }
    friend ComplexApprox operator/(ComplexApprox x, ComplexApprox y) {
        const double d = y.abs2();
        return {(x.re * y.re + x.im * y.im) / d, (x.im * y.re - x.re * y.im) / d};
    }
    friend ComplexApprox operator-(ComplexApprox x, ComplexApprox y) { return {x.re - y.re, x.im - y.im}; }
};

/// Embeds Z[ω] into C with ω ↦ e^{2πi/3}.
inline ComplexApprox embed(EisensteinInt x) {
    const double half_sqrt3 = std::numbers::sqrt3 / 2.0;
    return {static_cast<double>(x.a) - 0.5 * static_cast<double>(x.b), half_sqrt3 * static_cast<double>(x.b)};
}

}  // namespace charsum
