/**
 * @file group_ring.hpp
 * @brief The integral group algebra of (F_{p^m}, +), i.e. Z[X]/𝔍_X.
 *
 * An element is a dense coefficient vector indexed by field-element index;
 * X^γ is the unit vector at γ and X^γ X^δ = X^{γ+δ}. The relations
 * x_i^p = 1 hold because exponents are added in (Z_p)^m, so the ideal is
 * never written down.
 *
 * Coefficients are 64-bit; every convolution checks a magnitude bound first
 * and throws std::overflow_error if the result could overflow.
 */
#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "character.hpp"
#include "eisenstein.hpp"
#include "parallel.hpp"

namespace charsum {

/// (Z_p)^m as an index space; the only structure group-ring products need.
struct AdditiveGroup {
    std::uint32_t p = 0;
    unsigned m = 0;
    std::uint32_t q = 0;

    static AdditiveGroup of(const FieldTable& f) { return {f.p(), f.m(), f.q()}; }

    std::uint32_t add(std::uint32_t a, std::uint32_t b) const noexcept {
        if (m == 1) {
            const std::uint32_t s = a + b;
            return s >= p ? s - p : s;
        }
        if (p == 2) return a ^ b;
        std::uint32_t r = 0, w = 1;
        for (unsigned i = 0; i < m; ++i) {
            std::uint32_t d = a % p + b % p;
            if (d >= p) d -= p;
            r += d * w;
            w *= p;
            a /= p;
            b /= p;
        }
        return r;
    }

    friend bool operator==(const AdditiveGroup&, const AdditiveGroup&) = default;
};

class GroupRingElement {
public:
    using Coeff = std::int64_t;

    GroupRingElement() = default;
    explicit GroupRingElement(AdditiveGroup g) : group_(g), coeffs_(g.q, 0) {}
    GroupRingElement(AdditiveGroup g, std::vector<Coeff> coeffs) : group_(g), coeffs_(std::move(coeffs)) {
        if (coeffs_.size() != g.q) throw DomainError("coefficient vector length must equal q");
    }

    /// c · X^γ.
    static GroupRingElement monomial(AdditiveGroup g, std::uint32_t gamma, Coeff c = 1) {
        GroupRingElement e(g);
        e.coeffs_.at(gamma) = c;
        return e;
    }

    /// c · X^0.
    static GroupRingElement scalar(AdditiveGroup g, Coeff c) { return monomial(g, 0, c); }

    const AdditiveGroup& group() const noexcept { return group_; }
    const std::vector<Coeff>& coeffs() const noexcept { return coeffs_; }
    Coeff operator[](std::uint32_t gamma) const { return coeffs_.at(gamma); }

    bool is_zero() const noexcept {
        for (Coeff c : coeffs_)
            if (c != 0) return false;
        return true;
    }

    Coeff coefficient_sum() const {
        Coeff s = 0;
        for (Coeff c : coeffs_) s = detail::add_ov(s, c);
        return s;
    }

    friend GroupRingElement operator+(const GroupRingElement& a, const GroupRingElement& b) {
        check_same(a, b);
        GroupRingElement r = a;
        for (std::size_t k = 0; k < r.coeffs_.size(); ++k) r.coeffs_[k] = detail::add_ov(r.coeffs_[k], b.coeffs_[k]);
        return r;
    }
    friend GroupRingElement operator-(const GroupRingElement& a, const GroupRingElement& b) {
        check_same(a, b);
        GroupRingElement r = a;
        for (std::size_t k = 0; k < r.coeffs_.size(); ++k) r.coeffs_[k] = detail::sub_ov(r.coeffs_[k], b.coeffs_[k]);
        return r;
    }
    friend GroupRingElement operator*(Coeff s, const GroupRingElement& a) {
        GroupRingElement r = a;
        for (auto& c : r.coeffs_) c = detail::mul_ov(c, s);
        return r;
    }
    friend GroupRingElement operator*(const GroupRingElement& a, const GroupRingElement& b) { return gr_mul(a, b); }

    /// Exact division of every coefficient; throws TheoremViolation on a remainder.
    GroupRingElement divided_exactly(Coeff d, const std::string& what) const {
        GroupRingElement r = *this;
        for (std::size_t k = 0; k < r.coeffs_.size(); ++k) {
            if (r.coeffs_[k] % d != 0)
                throw TheoremViolation(what + ": coefficient " + std::to_string(r.coeffs_[k]) + " at index " +
                                       std::to_string(k) + " is not divisible by " + std::to_string(d));
            r.coeffs_[k] /= d;
        }
        return r;
    }

    friend bool operator==(const GroupRingElement&, const GroupRingElement&) = default;

    /**
     * Convolution c[γ] = Σ_δ a[δ] b[γ - δ]. Iterates over the nonzero support
     * of the sparser operand, so monomial products cost O(q).
     */
    friend GroupRingElement gr_mul(const GroupRingElement& a, const GroupRingElement& b) {
        check_same(a, b);
        const auto support = [](const GroupRingElement& e) {
            std::vector<std::uint32_t> s;
            for (std::uint32_t k = 0; k < e.coeffs_.size(); ++k)
                if (e.coeffs_[k] != 0) s.push_back(k);
            return s;
        };
        auto sa = support(a);
        auto sb = support(b);
        const GroupRingElement* x = &a;
        const GroupRingElement* y = &b;
        if (sa.size() > sb.size()) {
            std::swap(x, y);
            std::swap(sa, sb);
        }
        // |c[γ]| <= Σ|x| · max|y|
        Coeff sum_abs = 0, max_abs = 0;
        for (auto k : sa) sum_abs = detail::add_ov(sum_abs, std::llabs(x->coeffs_[k]));
        for (auto k : sb) max_abs = std::max<Coeff>(max_abs, std::llabs(y->coeffs_[k]));
        (void)detail::mul_ov(sum_abs, max_abs);

        const AdditiveGroup g = a.group_;
        GroupRingElement c(g);
        if (sa.empty()) return c;
        // Parallel over output coordinates: c[γ] = Σ_{δ ∈ supp x} x[δ] y[γ - δ].
        std::vector<std::uint32_t> neg_sa(sa.size());
        for (std::size_t t = 0; t < sa.size(); ++t) neg_sa[t] = neg_index(g, sa[t]);
        parallel_for(g.q, [&](std::size_t gamma) {
            Coeff acc = 0;
            for (std::size_t t = 0; t < sa.size(); ++t) {
                const Coeff yv = y->coeffs_[g.add(static_cast<std::uint32_t>(gamma), neg_sa[t])];
                if (yv != 0) acc += x->coeffs_[sa[t]] * yv;
            }
            c.coeffs_[gamma] = acc;
        });
        return c;
    }

private:
    static void check_same(const GroupRingElement& a, const GroupRingElement& b) {
        if (!(a.group_ == b.group_)) throw DomainError("group ring elements belong to different fields");
    }

    static std::uint32_t neg_index(const AdditiveGroup& g, std::uint32_t a) {
        std::uint32_t r = 0, w = 1;
        for (unsigned i = 0; i < g.m; ++i) {
            const std::uint32_t d = a % g.p;
            r += (d == 0 ? 0 : g.p - d) * w;
            w *= g.p;
            a /= g.p;
        }
        return r;
    }

    AdditiveGroup group_{};
    std::vector<Coeff> coeffs_;
};

/// Φ(X) = Σ_{γ ∈ F} X^γ.
inline GroupRingElement phi(const FieldTable& f) {
    return GroupRingElement(AdditiveGroup::of(f), std::vector<GroupRingElement::Coeff>(f.q(), 1));
}

/// f_S(X) for S = coset j of the partition.
inline GroupRingElement characteristic_fn(const CosetPartition& part, unsigned j) {
    if (j >= part.order()) throw DomainError("coset index out of range");
    std::vector<GroupRingElement::Coeff> c(part.field().q(), 0);
    for (Elem x : part.coset(j)) c[x.index] = 1;
    return GroupRingElement(AdditiveGroup::of(part.field()), std::move(c));
}

struct QuadraticSigma {
    GroupRingElement sigma1;
    GroupRingElement sigma2;
};

/**
 * σ1 = Φ - 1,
 * σ2 = -¼[q χ(-1) - 1 - Φ (q - 2 + χ(-1))].
 */
inline QuadraticSigma quadratic_sigma(const CosetPartition& part) {
    if (part.order() != 2) throw DomainError("quadratic_sigma requires the quadratic character");
    const FieldTable& f = part.field();
    const AdditiveGroup g = AdditiveGroup::of(f);
    const std::int64_t q = f.q();
    const std::int64_t chi_m1 = part.chi2(f.neg(f.one()));
    const GroupRingElement ph = phi(f);
    QuadraticSigma s;
    s.sigma1 = ph - GroupRingElement::scalar(g, 1);
    const GroupRingElement inner = GroupRingElement::scalar(g, q * chi_m1 - 1) - (q - 2 + chi_m1) * ph;
    s.sigma2 = (-1 * inner).divided_exactly(4, "sigma2 (quadratic)");
    return s;
}

struct CubicSigma {
    GroupRingElement sigma1;
    GroupRingElement sigma2;
    GroupRingElement sigma3;
};

/**
 * σ1 = Φ - 1,
 * σ2 = ⅓(q - 1)(Φ - 1),
 * σ3 = (1/27)[(Φ - 1)³ + (3 - 3Φ + J + J̄)(q - Φ)].
 */
inline CubicSigma cubic_sigma(const CosetPartition& part, const EisensteinInt& jacobi) {
    if (part.order() != 3) throw DomainError("cubic_sigma requires the cubic character");
    const EisensteinInt jj = jacobi + jacobi.conj();
    if (!jj.is_rational()) throw TheoremViolation("J + conj(J) is not a rational integer");
    const FieldTable& f = part.field();
    const AdditiveGroup g = AdditiveGroup::of(f);
    const std::int64_t q = f.q();
    const GroupRingElement ph = phi(f);
    const GroupRingElement one = GroupRingElement::scalar(g, 1);
    const GroupRingElement pm1 = ph - one;
    CubicSigma s;
    s.sigma1 = pm1;
    s.sigma2 = ((q - 1) * pm1).divided_exactly(3, "sigma2 (cubic)");
    const GroupRingElement cube = pm1 * pm1 * pm1;
    const GroupRingElement lin = GroupRingElement::scalar(g, 3 + jj.a) - 3 * ph;
    const GroupRingElement tail = GroupRingElement::scalar(g, q) - ph;
    s.sigma3 = (cube + lin * tail).divided_exactly(27, "sigma3 (cubic)");
    return s;
}

/// y² - σ1 y + σ2.
inline GroupRingElement quadratic_residual(const QuadraticSigma& s, const GroupRingElement& y) {
    return y * y - s.sigma1 * y + s.sigma2;
}

/// y³ - σ1 y² + σ2 y - σ3.
inline GroupRingElement cubic_residual(const CubicSigma& s, const GroupRingElement& y) {
    const GroupRingElement y2 = y * y;
    return y2 * y - s.sigma1 * y2 + s.sigma2 * y - s.sigma3;
}

}  // namespace charsum
