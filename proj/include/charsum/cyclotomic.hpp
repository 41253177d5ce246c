/**
 * @file cyclotomic.hpp
 * @brief Jacobi and Gauss sums of the quadratic and cubic characters.
 *
 * Jacobi sums of the cubic character live in Z[ω] and are computed exactly by
 * direct summation. Gauss sums involve p-th roots of unity as well, so they
 * are exact only for p = 2 (where the additive character is ±1) and numeric
 * otherwise.
 */
#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "character.hpp"

namespace charsum {

namespace detail {

inline EisensteinInt from_tally(const std::array<std::int64_t, 3>& t) {
    return EisensteinInt(t[0]) + EisensteinInt::omega_pow(1) * t[1] + EisensteinInt::omega_pow(2) * t[2];
}

inline void require_cubic(const CosetPartition& part) {
    if (part.order() != 3) throw DomainError("operation requires the cubic character");
}

}  // namespace detail

/// A(β) = Σ_x χ_3(x) χ_3(β - x).
inline EisensteinInt a_beta(const CosetPartition& part, Elem beta) {
    detail::require_cubic(part);
    if (beta.index == 0) throw DomainError("A(beta) requires beta != 0");
    const FieldTable& f = part.field();
    const auto& lab = part.labels();
    std::array<std::int64_t, 3> tally{};
    for (std::uint32_t x = 1; x < f.q(); ++x) {
        const std::uint32_t y = f.add_index(beta.index, f.neg_index(x));
        if (lab[y] == CosetPartition::kNoLabel) continue;
        ++tally[(lab[x] + lab[y]) % 3];
    }
    return detail::from_tally(tally);
}

/// J(χ_3, χ_3) = Σ_{c1 + c2 = 1} χ_3(c1) χ_3(c2); norm equals q.
inline EisensteinInt jacobi_cubic(const CosetPartition& part) { return a_beta(part, part.field().one()); }

/// Absolute trace of every element, indexed by element index.
inline std::vector<std::uint32_t> trace_table(const FieldTable& f) {
    std::vector<std::uint32_t> tr(f.q());
    for (std::uint32_t x = 0; x < f.q(); ++x) tr[x] = f.trace(Elem{x});
    return tr;
}

/**
 * G(1, χ) = Σ_{x≠0} χ(x) (-1)^{Tr(x)} in characteristic 2. For the cubic
 * character this equals -(-2)^{m/2}.
 */
inline EisensteinInt gauss_sum_exact(const CosetPartition& part) {
    const FieldTable& f = part.field();
    if (f.p() != 2) throw DomainError("exact Gauss sums are only available for p = 2");
    const auto tr = trace_table(f);
    EisensteinInt g;
    for (std::uint32_t x = 1; x < f.q(); ++x) {
        const EisensteinInt c = part.chi(Elem{x});
        g += tr[x] == 0 ? c : -c;
    }
    return g;
}

/// G(1, χ) with ψ(x) = e^{2πi Tr(x)/p}; conj_char evaluates G(1, χ̄) instead.
inline ComplexApprox gauss_sum_numeric(const CosetPartition& part, bool conj_char = false) {
    const FieldTable& f = part.field();
    const auto tr = trace_table(f);
    const unsigned n = part.order();
    const double two_pi = 2.0 * std::numbers::pi;
    long double re = 0, im = 0;
    for (std::uint32_t x = 1; x < f.q(); ++x) {
        unsigned l = part.labels()[x];
        if (conj_char) l = (n - l) % n;
        const double angle = two_pi * (static_cast<double>(l) / n + static_cast<double>(tr[x]) / f.p());
        re += std::cos(angle);
        im += std::sin(angle);
    }
    return {static_cast<double>(re), static_cast<double>(im)};
}

/// G(1, χ_3)² / G(1, χ̄_3), numerically; equals J(χ_3, χ_3).
inline ComplexApprox jacobi_from_gauss(const CosetPartition& part) {
    detail::require_cubic(part);
    const ComplexApprox g = gauss_sum_numeric(part, false);
    const ComplexApprox gbar = gauss_sum_numeric(part, true);
    return (g * g) / gbar;
}

}  // namespace charsum
