/**
 * @file repcount.hpp
 * @brief Representation counts R^(n)(β, i, j): ordered decompositions β = x + y
 *        with x in coset j and y in coset i.
 *
 * Every closed form here has a brute-force counterpart that enumerates pairs
 * directly. The closed forms divide by 4 or 9; a nonzero remainder is
 * reported as a TheoremViolation instead of being truncated.
 */
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "character.hpp"
#include "cyclotomic.hpp"
#include "parallel.hpp"

namespace charsum {

enum class CountMethod { ClosedForm, BruteForce };

struct RepQuery {
    Elem beta;
    unsigned i = 0;  ///< coset of the second summand
    unsigned j = 0;  ///< coset of the first summand
};

struct RepCountResult {
    RepQuery query;
    std::uint64_t count = 0;
    CountMethod method = CountMethod::ClosedForm;
    std::optional<EisensteinInt> k;  ///< K for the cubic closed form
};

namespace detail {

inline void check_cosets(const CosetPartition& part, unsigned i, unsigned j) {
    if (i >= part.order() || j >= part.order())
        throw DomainError("coset indices must lie in [0, " + std::to_string(part.order()) + ")");
}

inline std::uint64_t exact_div(std::int64_t num, std::int64_t den, const char* what) {
    if (num % den != 0 || num < 0)
        throw TheoremViolation(std::string(what) + ": " + std::to_string(num) + " is not a nonnegative multiple of " +
                               std::to_string(den));
    return static_cast<std::uint64_t>(num / den);
}

inline int sign_pow(unsigned e) { return (e % 2 == 0) ? 1 : -1; }

}  // namespace detail

/// Counts x in coset j with β - x in coset i, for any β (including zero).
inline std::uint64_t enumerate_pairs(const CosetPartition& part, Elem beta, unsigned i, unsigned j) {
    detail::check_cosets(part, i, j);
    const FieldTable& f = part.field();
    const auto& lab = part.labels();
    std::uint64_t count = 0;
    for (Elem x : part.coset(j)) {
        const std::uint32_t y = f.add_index(beta.index, f.neg_index(x.index));
        if (lab[y] == i) ++count;
    }
    return count;
}

/// Oracle: direct enumeration of ordered pairs (x, y), x ∈ coset j, y ∈ coset i, x + y = β ≠ 0.
inline std::uint64_t brute_rep_count(const CosetPartition& part, Elem beta, unsigned i, unsigned j) {
    if (beta.index == 0) throw DomainError("brute_rep_count requires beta != 0; use rep_count_zero");
    return enumerate_pairs(part, beta, i, j);
}

/// R^(2)(β,i,j) = ¼(q - 2 - χ(β)(-1)^i - χ(β)(-1)^j - (-1)^{i+j} χ(-1)).
inline std::uint64_t closed_rep_count_quadratic(const CosetPartition& part, Elem beta, unsigned i, unsigned j) {
    if (part.order() != 2) throw DomainError("quadratic closed form requires the quadratic character");
    if (beta.index == 0) throw DomainError("closed form requires beta != 0");
    detail::check_cosets(part, i, j);
    const std::int64_t q = part.field().q();
    const int chi_b = part.chi2(beta);
    const int chi_m1 = part.chi2(part.field().neg(part.field().one()));
    const std::int64_t num = q - 2 - chi_b * detail::sign_pow(i) - chi_b * detail::sign_pow(j) -
                             detail::sign_pow(i + j) * chi_m1;
    return detail::exact_div(num, 4, "quadratic representation count");
}

/// K = χ(β)(ω^{2i} + ω^{2j}) + ω^{2i+j} - ω^{2i+2j} χ̄(β) J.
inline EisensteinInt cubic_k(const CosetPartition& part, Elem beta, unsigned i, unsigned j, const EisensteinInt& jacobi) {
    using E = EisensteinInt;
    const E chi_b = part.chi(beta);
    return chi_b * (E::omega_pow(2 * i) + E::omega_pow(2 * j)) + E::omega_pow(2 * i + j) -
           E::omega_pow(2 * i + 2 * j) * chi_b.conj() * jacobi;
}

/// R^(3)(β,i,j) = (q - 2 - K - K̄)/9 with the Jacobi sum supplied by the caller.
inline RepCountResult closed_rep_count_cubic(const CosetPartition& part, Elem beta, unsigned i, unsigned j,
                                             const EisensteinInt& jacobi) {
    if (part.order() != 3) throw DomainError("cubic closed form requires the cubic character");
    if (beta.index == 0) throw DomainError("closed form requires beta != 0");
    detail::check_cosets(part, i, j);
    const EisensteinInt k = cubic_k(part, beta, i, j, jacobi);
    const EisensteinInt k_sum = k + k.conj();
    if (!k_sum.is_rational()) throw TheoremViolation("K + conj(K) has a nonzero omega coordinate");
    const std::int64_t q = part.field().q();
    RepCountResult r;
    r.query = {beta, i, j};
    r.count = detail::exact_div(q - 2 - k_sum.a, 9, "cubic representation count");
    r.method = CountMethod::ClosedForm;
    r.k = k;
    return r;
}

inline RepCountResult closed_rep_count_cubic(const CosetPartition& part, Elem beta, unsigned i, unsigned j) {
    return closed_rep_count_cubic(part, beta, i, j, jacobi_cubic(part));
}

/// R(0, i, j): (q-1)/n when i ≡ j + label(-1) (mod n), else 0.
inline std::uint64_t rep_count_zero(const CosetPartition& part, unsigned i, unsigned j) {
    detail::check_cosets(part, i, j);
    const unsigned n = part.order();
    if (i % n == (j + part.minus_one_label()) % n) return (part.field().q() - 1) / n;
    return 0;
}

/// Oracle for rep_count_zero: x in coset j with -x in coset i.
inline std::uint64_t brute_rep_count_zero(const CosetPartition& part, unsigned i, unsigned j) {
    return enumerate_pairs(part, part.field().zero(), i, j);
}

/// Dispatches on method; β = 0 is routed to the zero-sum count.
inline RepCountResult rep_count(const CosetPartition& part, const RepQuery& query, CountMethod method,
                                const std::optional<EisensteinInt>& jacobi = std::nullopt) {
    RepCountResult r;
    r.query = query;
    r.method = method;
    if (query.beta.index == 0) {
        r.count = method == CountMethod::ClosedForm ? rep_count_zero(part, query.i, query.j)
                                                    : brute_rep_count_zero(part, query.i, query.j);
        return r;
    }
    if (method == CountMethod::BruteForce) {
        r.count = brute_rep_count(part, query.beta, query.i, query.j);
        return r;
    }
    if (part.order() == 2) {
        r.count = closed_rep_count_quadratic(part, query.beta, query.i, query.j);
        return r;
    }
    auto c = closed_rep_count_cubic(part, query.beta, query.i, query.j, jacobi ? *jacobi : jacobi_cubic(part));
    c.method = method;
    return c;
}

/// Closed-form counts for one representative β of each coset: table[l][i][j].
struct ClassTable {
    unsigned n = 0;
    std::vector<std::vector<std::vector<std::uint64_t>>> counts;
};

inline ClassTable class_table(const CosetPartition& part) {
    const unsigned n = part.order();
    ClassTable t;
    t.n = n;
    t.counts.assign(n, std::vector<std::vector<std::uint64_t>>(n, std::vector<std::uint64_t>(n, 0)));
    std::optional<EisensteinInt> jac;
    if (n == 3) jac = jacobi_cubic(part);
    for (unsigned l = 0; l < n; ++l) {
        const Elem beta = part.coset(l).front();
        for (unsigned i = 0; i < n; ++i)
            for (unsigned j = 0; j < n; ++j) t.counts[l][i][j] = rep_count(part, {beta, i, j}, CountMethod::ClosedForm, jac).count;
    }
    return t;
}

/// Outcome of checking every β ≠ 0 and every (i, j) against the oracle.
struct RepSweep {
    std::uint64_t comparisons = 0;
    std::uint64_t mismatches = 0;
    bool class_invariant = true;   ///< R depends on β only through label(β)
    bool symmetric = true;         ///< R(β,i,j) = R(β,j,i)
    bool row_sums = true;          ///< Σ_{i,j} R(β,i,j) = q - 2
    std::uint64_t max_count = 0;   ///< max over β, i, j
    std::optional<std::string> first_failure;
};

/**
 * Exhaustive closed-form vs brute-force comparison over β ≠ 0 and all (i, j),
 * with the structural properties checked on the way. Parallel over β.
 */
inline RepSweep sweep_rep_counts(const CosetPartition& part) {
    const FieldTable& f = part.field();
    const unsigned n = part.order();
    std::optional<EisensteinInt> jac;
    if (n == 3) jac = jacobi_cubic(part);
    const ClassTable classes = class_table(part);

    struct PerBeta {
        std::uint64_t mismatches = 0;
        bool class_ok = true, sym_ok = true, row_ok = true;
        std::uint64_t max_count = 0;
        std::string failure;
    };
    std::vector<PerBeta> out(f.q());
    parallel_for(f.q() - 1, [&](std::size_t k) {
        const Elem beta{static_cast<std::uint32_t>(k + 1)};
        const unsigned lb = part.label(beta);
        PerBeta& r = out[beta.index];
        std::vector<std::uint64_t> cell(n * n);
        std::uint64_t row = 0;
        for (unsigned i = 0; i < n; ++i) {
            for (unsigned j = 0; j < n; ++j) {
                const std::uint64_t closed = rep_count(part, {beta, i, j}, CountMethod::ClosedForm, jac).count;
                const std::uint64_t brute = brute_rep_count(part, beta, i, j);
                cell[i * n + j] = closed;
                row += brute;
                r.max_count = std::max(r.max_count, closed);
                if (closed != brute) {
                    ++r.mismatches;
                    if (r.failure.empty())
                        r.failure = "beta=" + std::to_string(beta.index) + " i=" + std::to_string(i) + " j=" +
                                    std::to_string(j) + " closed=" + std::to_string(closed) + " brute=" + std::to_string(brute);
                }
                if (closed != classes.counts[lb][i][j]) r.class_ok = false;
            }
        }
        for (unsigned i = 0; i < n; ++i)
            for (unsigned j = 0; j < n; ++j)
                if (cell[i * n + j] != cell[j * n + i]) r.sym_ok = false;
        if (row != f.q() - 2) r.row_ok = false;
    });

    RepSweep s;
    s.comparisons = static_cast<std::uint64_t>(f.q() - 1) * n * n;
    for (const auto& r : out) {
        s.mismatches += r.mismatches;
        s.class_invariant = s.class_invariant && r.class_ok;
        s.symmetric = s.symmetric && r.sym_ok;
        s.row_sums = s.row_sums && r.row_ok;
        s.max_count = std::max(s.max_count, r.max_count);
        if (!s.first_failure && !r.failure.empty()) s.first_failure = r.failure;
    }
    return s;
}

/// Counts over the prime field F_p for each residuacity of β and each coset pair.
struct PerronTable {
    std::uint64_t qr_as_two_qr = 0;
    std::uint64_t qr_as_two_nonres = 0;
    std::uint64_t qr_as_mixed = 0;
    std::uint64_t nonres_as_two_qr = 0;
    std::uint64_t nonres_as_two_nonres = 0;
    std::uint64_t nonres_as_mixed = 0;
};

/// Perron's table via the quadratic closed form on F_p.
inline PerronTable perron_table(std::uint32_t p) {
    if (p == 2 || !detail::is_prime(p)) throw DomainError("perron_table requires an odd prime");
    const CosetPartition part(build_field(p, 1), CharacterOrder{2});
    const Elem qr = part.coset(0).front();
    const Elem nr = part.coset(1).front();
    PerronTable t;
    t.qr_as_two_qr = closed_rep_count_quadratic(part, qr, 0, 0);
    t.qr_as_two_nonres = closed_rep_count_quadratic(part, qr, 1, 1);
    t.qr_as_mixed = closed_rep_count_quadratic(part, qr, 0, 1);
    t.nonres_as_two_qr = closed_rep_count_quadratic(part, nr, 0, 0);
    t.nonres_as_two_nonres = closed_rep_count_quadratic(part, nr, 1, 1);
    t.nonres_as_mixed = closed_rep_count_quadratic(part, nr, 0, 1);
    return t;
}

}  // namespace charsum
