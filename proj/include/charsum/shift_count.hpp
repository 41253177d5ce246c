/**
 * @file shift_count.hpp
 * @brief Shift counts N^(n)(t) and the max R = 1 + max N(3) identities.
 *
 * For t nonzero elements sharing one coset, N counts the β for which every
 * β + e_i is nonzero and all of them share a coset. β = 0 qualifies
 * trivially. Maximization runs over t-subsets of coset 0.
 */
#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "character.hpp"
#include "parallel.hpp"
#include "repcount.hpp"

namespace charsum {

/// N for a concrete label-homogeneous set of distinct nonzero elements.
inline std::uint64_t shift_count(const CosetPartition& part, const std::vector<Elem>& elements) {
    if (elements.empty()) throw DomainError("shift query needs at least one element");
    std::set<std::uint32_t> seen;
    const auto& lab = part.labels();
    for (Elem e : elements) {
        if (e.index >= part.field().q()) throw DomainError("shift query element out of range");
        if (e.index == 0) throw DomainError("shift query elements must be nonzero");
        if (!seen.insert(e.index).second) throw DomainError("shift query elements must be distinct");
        if (lab[e.index] != lab[elements.front().index]) throw DomainError("shift query elements must share one coset");
    }
    const FieldTable& f = part.field();
    std::uint64_t count = 0;
    for (std::uint32_t beta = 0; beta < f.q(); ++beta) {
        std::uint8_t common = CosetPartition::kNoLabel;
        bool ok = true;
        for (Elem e : elements) {
            const std::uint8_t l = lab[f.add_index(beta, e.index)];
            if (l == CosetPartition::kNoLabel || (common != CosetPartition::kNoLabel && l != common)) {
                ok = false;
                break;
            }
            common = l;
        }
        if (ok) ++count;
    }
    return count;
}

struct ShiftMax {
    std::uint64_t max_count = 0;
    std::vector<Elem> witness;  ///< lexicographically least subset attaining the max
};

namespace detail {

/// For each element of coset 0 and each label k: the bitset {β : label(β + e) = k}.
class ShiftBitsets {
public:
    explicit ShiftBitsets(const CosetPartition& part) : n_(part.order()), words_((part.field().q() + 63) / 64) {
        const FieldTable& f = part.field();
        const auto& lab = part.labels();
        const auto& c0 = part.coset(0);
        bits_.assign(c0.size() * n_ * words_, 0);
        for (std::size_t idx = 0; idx < c0.size(); ++idx) {
            for (std::uint32_t beta = 0; beta < f.q(); ++beta) {
                const std::uint8_t l = lab[f.add_index(beta, c0[idx].index)];
                if (l == CosetPartition::kNoLabel) continue;
                row(idx, l)[beta / 64] |= std::uint64_t{1} << (beta % 64);
            }
        }
    }

    unsigned n() const noexcept { return n_; }
    std::size_t words() const noexcept { return words_; }
    const std::uint64_t* row(std::size_t idx, unsigned k) const { return bits_.data() + (idx * n_ + k) * words_; }

private:
    std::uint64_t* row(std::size_t idx, unsigned k) { return bits_.data() + (idx * n_ + k) * words_; }

    unsigned n_;
    std::size_t words_;
    std::vector<std::uint64_t> bits_;
};

struct SearchState {
    std::uint64_t best = 0;
    std::vector<std::size_t> witness;  // positions in coset 0
    bool found = false;
};

// Depth-first over increasing positions; acc holds the n running intersections.
inline void extend(const ShiftBitsets& bs, std::size_t coset_size, unsigned t, std::vector<std::size_t>& chosen,
                   const std::vector<std::uint64_t>& acc, SearchState& st) {
    const std::size_t words = bs.words();
    const unsigned n = bs.n();
    if (chosen.size() == t) {
        std::uint64_t count = 0;
        for (std::size_t w = 0; w < n * words; ++w) count += static_cast<std::uint64_t>(std::popcount(acc[w]));
        if (!st.found || count > st.best) {
            st.best = count;
            st.witness = chosen;
            st.found = true;
        }
        return;
    }
    const std::size_t start = chosen.back() + 1;
    const std::size_t remaining = t - chosen.size();
    std::vector<std::uint64_t> next(acc.size());
    for (std::size_t pos = start; pos + remaining <= coset_size; ++pos) {
        for (unsigned k = 0; k < n; ++k) {
            const std::uint64_t* r = bs.row(pos, k);
            for (std::size_t w = 0; w < words; ++w) next[k * words + w] = acc[k * words + w] & r[w];
        }
        chosen.push_back(pos);
        extend(bs, coset_size, t, chosen, next, st);
        chosen.pop_back();
    }
}

}  // namespace detail

/**
 * Exact max of N over t-subsets of coset 0, with the lexicographically least
 * witness (by element index).
 *
 * Scaling by any a in coset 0 maps subsets to subsets with the same N, so
 * every orbit meets the subsets containing the smallest element of coset 0,
 * and those precede all others lexicographically. Only they are searched.
 */
inline ShiftMax max_shift_count(const CosetPartition& part, unsigned t) {
    const auto& c0 = part.coset(0);
    if (t == 0) throw DomainError("subset size t must be positive");
    if (c0.size() < t)
        throw DomainError("coset of size " + std::to_string(c0.size()) + " is too small for t = " + std::to_string(t));
    const detail::ShiftBitsets bs(part);
    const std::size_t words = bs.words();
    const unsigned n = bs.n();

    std::vector<std::uint64_t> acc0(n * words);
    for (unsigned k = 0; k < n; ++k)
        for (std::size_t w = 0; w < words; ++w) acc0[k * words + w] = bs.row(0, k)[w];

    detail::SearchState best;
    if (t == 1) {
        std::vector<std::size_t> chosen{0};
        detail::extend(bs, c0.size(), t, chosen, acc0, best);
    } else {
        // Parallel over the second position; reduce by (max, earliest branch).
        const std::size_t branches = c0.size() - 1 - (t - 2);
        std::vector<detail::SearchState> per(branches);
        parallel_for(branches, [&](std::size_t b) {
            const std::size_t pos = b + 1;
            std::vector<std::uint64_t> acc(n * words);
            for (unsigned k = 0; k < n; ++k)
                for (std::size_t w = 0; w < words; ++w) acc[k * words + w] = acc0[k * words + w] & bs.row(pos, k)[w];
            std::vector<std::size_t> chosen{0, pos};
            detail::extend(bs, c0.size(), t, chosen, acc, per[b]);
        });
        for (auto& s : per) {
            if (s.found && (!best.found || s.best > best.best)) best = std::move(s);
        }
    }
    ShiftMax out;
    out.max_count = best.best;
    for (std::size_t pos : best.witness) out.witness.push_back(c0[pos]);
    return out;
}

/**
 * Predicted 1 + max N(3). Cubic branch only over F_{2^m}; quadratic branch
 * over any odd q.
 */
inline std::uint64_t closed_form_max3(const FieldTable& f, unsigned n) {
    const std::int64_t q = f.q();
    if (n == 3) {
        if (f.p() != 2) throw DomainError("cubic shift-count closed form is stated only for p = 2");
        if (f.m() % 2 != 0) throw DomainError("no cubic character on F_2^" + std::to_string(f.m()));
        const unsigned half = f.m() / 2;
        const std::int64_t r = std::int64_t{1} << half;
        const std::int64_t num = (half % 2 == 0) ? q + r - 2 : q + 2 * r + 1;
        return detail::exact_div(num, 9, "cubic shift-count closed form");
    }
    if (n == 2) {
        if (f.p() == 2) throw DomainError("no quadratic character in characteristic 2");
        const bool plus = f.p() % 4 == 3 && f.m() % 2 == 1;
        return detail::exact_div(plus ? q + 1 : q - 1, 4, "quadratic shift-count closed form");
    }
    throw DomainError("unsupported character order " + std::to_string(n));
}

struct DualityReport {
    std::uint32_t p = 0;
    unsigned m = 0;
    unsigned n = 0;
    std::uint64_t max_r = 0;
    RepQuery max_r_witness;
    std::uint64_t max_n3 = 0;
    std::vector<Elem> max_n3_witness;
    std::optional<std::uint64_t> closed_form_prediction;  ///< predicted 1 + max N(3), when in the formula's domain
    bool holds = false;                                  ///< max_r == 1 + max_n3
};

/**
 * Both sides of max R = 1 + max N(3), computed independently: the left from
 * the closed-form counts over all (label(β), i, j) classes, the right by
 * exhaustive search.
 */
inline DualityReport verify_duality(const CosetPartition& part) {
    const FieldTable& f = part.field();
    const unsigned n = part.order();
    if (part.coset(0).size() < 3) throw DomainError("coset too small for triples");
    DualityReport r;
    r.p = f.p();
    r.m = f.m();
    r.n = n;
    const ClassTable t = class_table(part);
    bool first = true;
    for (unsigned l = 0; l < n; ++l)
        for (unsigned i = 0; i < n; ++i)
            for (unsigned j = 0; j < n; ++j)
                if (first || t.counts[l][i][j] > r.max_r) {
                    r.max_r = t.counts[l][i][j];
                    r.max_r_witness = {part.coset(l).front(), i, j};
                    first = false;
                }
    const ShiftMax sm = max_shift_count(part, 3);
    r.max_n3 = sm.max_count;
    r.max_n3_witness = sm.witness;
    if (n == 2 || f.p() == 2) r.closed_form_prediction = closed_form_max3(f, n);
    r.holds = r.max_r == 1 + r.max_n3;
    return r;
}

}  // namespace charsum
