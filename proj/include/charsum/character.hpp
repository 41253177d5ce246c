/**
 * @file character.hpp
 * @brief Quadratic and cubic multiplicative characters and their coset partitions.
 *
 * The character of order n is pinned to the canonical primitive element α:
 * χ_n(α^h) = ω_n^h. A nonzero x carries the label dlog(x) mod n, which is the
 * index of its coset (B_j for n = 2, A_j for n = 3). Indicator functions are
 * label comparisons. With `conjugate` set, χ_3 is replaced by χ̄_3, which
 * swaps labels 1 and 2.
 */
#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "eisenstein.hpp"
#include "ff_core.hpp"

namespace charsum {

/// Order of the multiplicative character, 2 or 3.
class CharacterOrder {
public:
    constexpr explicit CharacterOrder(unsigned n) : n_(n) {}
    constexpr unsigned value() const noexcept { return n_; }
    constexpr operator unsigned() const noexcept { return n_; }

private:
    unsigned n_;
};

/// Whether a nontrivial character of order n exists on F_{p^m}.
inline bool character_exists(const FieldTable& field, unsigned n) {
    if (n == 2) return field.p() != 2;
    if (n == 3) return (field.q() - 1) % 3 == 0;
    return false;
}

inline void require_character(const FieldTable& field, unsigned n) {
    if (n != 2 && n != 3) throw DomainError("unsupported character order " + std::to_string(n) + " (only 2 and 3)");
    if (!character_exists(field, n))
        throw DomainError("no character of order " + std::to_string(n) + " on F_" + std::to_string(field.q()) + ": " +
                          std::to_string(n) + " does not divide q - 1");
}

class CosetPartition {
public:
    static constexpr std::uint8_t kNoLabel = 0xFF;

    CosetPartition(std::shared_ptr<const FieldTable> field, CharacterOrder n, bool conjugate = false)
        : field_(std::move(field)), n_(n.value()), conjugate_(conjugate) {
        require_character(*field_, n_);
        const std::uint32_t q = field_->q();
        label_.assign(q, kNoLabel);
        cosets_.assign(n_, {});
        for (std::uint32_t h = 0; h < q - 1; ++h) {
            const Elem x = field_->exp(h);
            std::uint32_t l = h % n_;
            if (conjugate_) l = (n_ - l) % n_;
            label_[x.index] = static_cast<std::uint8_t>(l);
        }
        for (std::uint32_t x = 1; x < q; ++x) cosets_[label_[x]].push_back(Elem{x});
        minus_one_label_ = label_[field_->neg(field_->one()).index];
    }

    const FieldTable& field() const noexcept { return *field_; }
    const std::shared_ptr<const FieldTable>& field_ptr() const noexcept { return field_; }
    unsigned order() const noexcept { return n_; }
    bool conjugated() const noexcept { return conjugate_; }

    /// Coset index of x; throws on zero.
    unsigned label(Elem x) const {
        const std::uint8_t l = label_.at(x.index);
        if (l == kNoLabel) throw DomainError("zero belongs to no coset");
        return l;
    }

    /// Raw label table indexed by element index; kNoLabel at zero.
    const std::vector<std::uint8_t>& labels() const noexcept { return label_; }

    bool indicator(Elem x, unsigned j) const noexcept { return label_[x.index] == j; }

    /// Elements of coset j in increasing index order.
    const std::vector<Elem>& coset(unsigned j) const { return cosets_.at(j); }

    unsigned minus_one_label() const noexcept { return minus_one_label_; }

    /// χ(x) as an element of Z[ω] (n = 2 gives ±1 or 0).
    EisensteinInt chi(Elem x) const {
        const std::uint8_t l = label_[x.index];
        if (l == kNoLabel) return {0, 0};
        if (n_ == 2) return {l == 0 ? 1 : -1, 0};
        return EisensteinInt::omega_pow(l);
    }

    /// χ̄(x).
    EisensteinInt chi_bar(Elem x) const { return chi(x).conj(); }

    /// Integer value of the quadratic character; only for n = 2.
    int chi2(Elem x) const {
        if (n_ != 2) throw DomainError("chi2 requested on a cubic partition");
        const std::uint8_t l = label_[x.index];
        return l == kNoLabel ? 0 : (l == 0 ? 1 : -1);
    }

private:
    std::shared_ptr<const FieldTable> field_;
    unsigned n_;
    bool conjugate_;
    std::vector<std::uint8_t> label_;
    std::vector<std::vector<Elem>> cosets_;
    unsigned minus_one_label_ = 0;
};

inline CosetPartition partition(std::shared_ptr<const FieldTable> field, CharacterOrder n, bool conjugate = false) {
    return CosetPartition(std::move(field), n, conjugate);
}

enum class MomentMode { First, Shifted };

/**
 * First moment Σ_x χ(x), or shifted correlation Σ_x χ(x) χ̄(x + γ).
 * Terms where χ is evaluated at zero vanish.
 */
inline EisensteinInt char_sum_moment(const CosetPartition& part, MomentMode mode, Elem gamma = Elem{0}) {
    const FieldTable& f = part.field();
    EisensteinInt sum;
    if (mode == MomentMode::First) {
        for (std::uint32_t x = 0; x < f.q(); ++x) sum += part.chi(Elem{x});
        return sum;
    }
    if (gamma.index == 0) throw DomainError("shifted character correlation requires gamma != 0");
    // χ(x)χ̄(y) = ω^{label(x) - label(y)}; tally exponents, then combine.
    const auto& lab = part.labels();
    const unsigned n = part.order();
    std::array<std::int64_t, 3> tally{};
    for (std::uint32_t x = 1; x < f.q(); ++x) {
        const std::uint32_t y = f.add_index(x, gamma.index);
        if (lab[y] == CosetPartition::kNoLabel) continue;
        ++tally[(lab[x] + n - lab[y]) % n];
    }
    if (n == 2) return {tally[0] - tally[1], 0};
    return EisensteinInt(tally[0]) + EisensteinInt::omega_pow(1) * tally[1] + EisensteinInt::omega_pow(2) * tally[2];
}

/**
 * σ_i = #{x : χ(x) χ̄(x + x_j) = ω_n^i}, over x with both arguments nonzero.
 * Expected shape: σ_0 + 1 = σ_1 = ... = σ_{n-1} = (q-1)/n.
 */
inline std::vector<std::uint64_t> winterhof_counts(const CosetPartition& part, Elem xj) {
    if (xj.index == 0) throw DomainError("winterhof counts require x_j != 0");
    const FieldTable& f = part.field();
    const auto& lab = part.labels();
    const unsigned n = part.order();
    std::vector<std::uint64_t> sigma(n, 0);
    for (std::uint32_t x = 1; x < f.q(); ++x) {
        const std::uint32_t y = f.add_index(x, xj.index);
        if (lab[y] == CosetPartition::kNoLabel) continue;
        ++sigma[(lab[x] + n - lab[y]) % n];
    }
    return sigma;
}

}  // namespace charsum
