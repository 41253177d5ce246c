/**
 * @file ff_core.hpp
 * @brief Finite fields F_{p^m} in a polynomial basis with dense exp/log tables.
 *
 * An element γ = γ_0 + γ_1 η + ... + γ_{m-1} η^{m-1} is addressed by the
 * integer index Σ γ_i p^i. Addition acts digit-wise on indices, so it never
 * touches the modulus. Multiplication goes through the discrete-log tables
 * built from the canonical primitive element.
 *
 * Canonical choices:
 * - modulus: the monic irreducible of degree m whose coefficient vector has
 *   the smallest base-p value (for m = 1 this is x itself);
 * - primitive element: the generator with the smallest index.
 */
#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace charsum {

/// Thrown when an operation is asked for outside its mathematical domain.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Thrown when a closed form fails to hold (non-integral division, mismatch).
class TheoremViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

inline constexpr std::uint64_t kDefaultSizeCap = 1u << 16;

/// Size cap for q, overridable through CHARSUM_SIZE_CAP.
inline std::uint64_t size_cap() {
    if (const char* env = std::getenv("CHARSUM_SIZE_CAP"); env != nullptr && *env != '\0') {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end != nullptr && *end == '\0' && v > 0) return v;
    }
    return kDefaultSizeCap;
}

namespace detail {

inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

inline std::uint64_t checked_pow(std::uint64_t base, unsigned exp, std::uint64_t limit) {
    std::uint64_t r = 1;
    for (unsigned k = 0; k < exp; ++k) {
        if (r > limit / base) return limit + 1;
        r *= base;
    }
    return r;
}

}  // namespace detail

/// Dense polynomial over Z_p, constant term first. Trailing zeros trimmed.
using Poly = std::vector<std::uint32_t>;

namespace poly {

inline void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
    // Fermat; p is prime
    std::uint64_t r = 1, b = a % p;
    for (std::uint32_t e = p - 2; e > 0; e >>= 1) {
        if (e & 1u) r = r * b % p;
        b = b * b % p;
    }
    return static_cast<std::uint32_t>(r);
}

inline Poly sub(Poly a, const Poly& b, std::uint32_t p) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
    trim(a);
    return a;
}

/// Remainder of a modulo f (f nonzero).
inline Poly rem(Poly a, const Poly& f, std::uint32_t p) {
    trim(a);
    const std::size_t df = f.size() - 1;
    const std::uint32_t lead_inv = inv_mod(f.back(), p);
    while (!a.empty() && a.size() - 1 >= df) {
        const std::size_t shift = a.size() - 1 - df;
        const std::uint64_t c = static_cast<std::uint64_t>(a.back()) * lead_inv % p;
        for (std::size_t i = 0; i <= df; ++i) {
            const std::uint64_t t = c * f[i] % p;
            a[i + shift] = static_cast<std::uint32_t>((a[i + shift] + p - t) % p);
        }
        trim(a);
    }
    return a;
}

inline Poly mul_mod(const Poly& a, const Poly& b, const Poly& f, std::uint32_t p) {
    if (a.empty() || b.empty()) return {};
    Poly c(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            c[i + j] = static_cast<std::uint32_t>((c[i + j] + static_cast<std::uint64_t>(a[i]) * b[j]) % p);
    }
    return rem(std::move(c), f, p);
}

inline Poly pow_mod(Poly base, std::uint64_t e, const Poly& f, std::uint32_t p) {
    Poly r{1};
    r = rem(std::move(r), f, p);
    base = rem(std::move(base), f, p);
    while (e > 0) {
        if (e & 1u) r = mul_mod(r, base, f, p);
        base = mul_mod(base, base, f, p);
        e >>= 1;
    }
    return r;
}

inline Poly gcd(Poly a, Poly b, std::uint32_t p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Poly r = rem(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

/// Certifies irreducibility of a monic f of degree m over Z_p (Rabin's test).
inline bool is_irreducible(const Poly& f, std::uint32_t p) {
    if (f.size() < 2) return false;
    const unsigned m = static_cast<unsigned>(f.size() - 1);
    const Poly x{0, 1};
    // x^{p^k} mod f by repeated p-th powering
    auto frob_iter = [&](unsigned k) {
        Poly r = rem(x, f, p);
        for (unsigned s = 0; s < k; ++s) r = pow_mod(r, p, f, p);
        return r;
    };
    if (!sub(frob_iter(m), rem(x, f, p), p).empty()) return false;
    for (std::uint64_t l : detail::prime_factors(m)) {
        const Poly h = sub(frob_iter(m / static_cast<unsigned>(l)), rem(x, f, p), p);
        const Poly g = gcd(f, h, p);
        if (g.size() != 1) return false;
    }
    return true;
}

}  // namespace poly

/// Returns the canonical modulus: smallest monic irreducible of degree m in
/// base-p value order of (c_0, ..., c_{m-1}).
inline Poly find_irreducible(std::uint32_t p, unsigned m) {
    if (!detail::is_prime(p)) throw DomainError("p = " + std::to_string(p) + " is not prime");
    if (m == 0) throw DomainError("extension degree must be positive");
    const std::uint64_t cap = size_cap();
    const std::uint64_t q = detail::checked_pow(p, m, cap);
    if (q > cap) throw DomainError("field size exceeds cap " + std::to_string(cap));
    for (std::uint64_t v = 0; v < q; ++v) {
        Poly f(m + 1, 0);
        std::uint64_t t = v;
        for (unsigned i = 0; i < m; ++i) {
            f[i] = static_cast<std::uint32_t>(t % p);
            t /= p;
        }
        f[m] = 1;
        if (poly::is_irreducible(f, p)) return f;
    }
    throw std::logic_error("no irreducible polynomial found");
}

/// Field element, addressed by its dense index.
struct Elem {
    std::uint32_t index = 0;
    friend constexpr bool operator==(Elem, Elem) = default;
    friend constexpr auto operator<=>(Elem, Elem) = default;
};

struct FieldSpec {
    std::uint32_t p = 0;
    unsigned m = 1;
    std::optional<Poly> modulus;  ///< monic, degree m; canonical when empty
};

/// Parses "p", "p^m" or "p^m:c0,c1,...,cm".
inline FieldSpec parse_field_spec(std::string_view text) {
    auto parse_uint = [&](std::string_view s) -> std::uint64_t {
        if (s.empty()) throw DomainError("malformed field spec '" + std::string(text) + "'");
        std::uint64_t v = 0;
        for (char c : s) {
            if (c < '0' || c > '9') throw DomainError("malformed field spec '" + std::string(text) + "'");
            v = v * 10 + static_cast<std::uint64_t>(c - '0');
            if (v > std::numeric_limits<std::uint32_t>::max())
                throw DomainError("field spec value out of range in '" + std::string(text) + "'");
        }
        return v;
    };
    FieldSpec spec;
    std::string_view head = text;
    std::string_view tail;
    if (const auto colon = text.find(':'); colon != std::string_view::npos) {
        head = text.substr(0, colon);
        tail = text.substr(colon + 1);
        if (tail.empty()) throw DomainError("empty modulus in field spec '" + std::string(text) + "'");
    }
    if (const auto caret = head.find('^'); caret != std::string_view::npos) {
        spec.p = static_cast<std::uint32_t>(parse_uint(head.substr(0, caret)));
        spec.m = static_cast<unsigned>(parse_uint(head.substr(caret + 1)));
    } else {
        spec.p = static_cast<std::uint32_t>(parse_uint(head));
        spec.m = 1;
    }
    if (!tail.empty()) {
        Poly f;
        std::size_t start = 0;
        while (start <= tail.size()) {
            const auto comma = tail.find(',', start);
            const auto piece = tail.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
            f.push_back(static_cast<std::uint32_t>(parse_uint(piece)));
            if (comma == std::string_view::npos) break;
            start = comma + 1;
        }
        spec.modulus = std::move(f);
    }
    return spec;
}

/**
 * Immutable arithmetic model of F_{p^m}.
 *
 * Holds exp/log tables relative to the canonical primitive element; safe to
 * share across threads once built.
 */
class FieldTable {
public:
    explicit FieldTable(FieldSpec spec) : p_(spec.p), m_(spec.m) {
        if (!detail::is_prime(p_)) throw DomainError("p = " + std::to_string(p_) + " is not prime");
        if (m_ == 0) throw DomainError("extension degree must be positive");
        const std::uint64_t cap = size_cap();
        const std::uint64_t q = detail::checked_pow(p_, m_, cap);
        if (q > cap) throw DomainError("field size " + std::to_string(p_) + "^" + std::to_string(m_) + " exceeds cap " + std::to_string(cap));
        q_ = static_cast<std::uint32_t>(q);

        if (spec.modulus) {
            Poly f = *spec.modulus;
            for (auto c : f)
                if (c >= p_) throw DomainError("modulus coefficient out of range");
            if (f.size() != m_ + 1 || f.back() != 1) throw DomainError("modulus must be monic of degree m");
            if (!poly::is_irreducible(f, p_)) throw DomainError("modulus is reducible over Z_p");
            modulus_ = std::move(f);
        } else {
            modulus_ = find_irreducible(p_, m_);
        }

        pow_.resize(m_ + 1);
        pow_[0] = 1;
        for (unsigned i = 1; i <= m_; ++i) pow_[i] = pow_[i - 1] * p_;

        find_primitive();
        build_tables();
    }

    std::uint32_t p() const noexcept { return p_; }
    unsigned m() const noexcept { return m_; }
    std::uint32_t q() const noexcept { return q_; }
    const Poly& modulus() const noexcept { return modulus_; }
    Elem alpha() const noexcept { return alpha_; }

    Elem zero() const noexcept { return Elem{0}; }
    Elem one() const noexcept { return Elem{1}; }

    /// Coordinates γ_0..γ_{m-1} of x in the basis 1, η, ..., η^{m-1}.
    std::vector<std::uint32_t> coords(Elem x) const {
        std::vector<std::uint32_t> c(m_);
        std::uint32_t t = x.index;
        for (unsigned i = 0; i < m_; ++i) {
            c[i] = t % p_;
            t /= p_;
        }
        return c;
    }

    Elem from_coords(const std::vector<std::uint32_t>& c) const {
        if (c.size() > m_) throw DomainError("too many coordinates");
        std::uint32_t idx = 0;
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (c[i] >= p_) throw DomainError("coordinate out of range");
            idx += c[i] * pow_[i];
        }
        return Elem{idx};
    }

    Elem element(std::uint64_t index) const {
        if (index >= q_) throw DomainError("element index " + std::to_string(index) + " out of range for q = " + std::to_string(q_));
        return Elem{static_cast<std::uint32_t>(index)};
    }

    Elem add(Elem a, Elem b) const noexcept { return Elem{add_index(a.index, b.index)}; }
    Elem neg(Elem a) const noexcept { return Elem{neg_index(a.index)}; }
    Elem sub(Elem a, Elem b) const noexcept { return Elem{add_index(a.index, neg_index(b.index))}; }

    Elem mul(Elem a, Elem b) const noexcept {
        if (a.index == 0 || b.index == 0) return zero();
        std::uint32_t e = log_[a.index] + log_[b.index];
        if (e >= q_ - 1) e -= q_ - 1;
        return Elem{exp_[e]};
    }

    Elem inv(Elem a) const {
        if (a.index == 0) throw DomainError("zero has no inverse");
        const std::uint32_t l = log_[a.index];
        return Elem{exp_[l == 0 ? 0 : q_ - 1 - l]};
    }

    Elem pow(Elem a, std::uint64_t e) const noexcept {
        if (e == 0) return one();
        if (a.index == 0) return zero();
        return Elem{exp_[(static_cast<std::uint64_t>(log_[a.index]) * (e % (q_ - 1))) % (q_ - 1)]};
    }

    /// α^h for any h (reduced mod q-1).
    Elem exp(std::uint64_t h) const noexcept { return Elem{exp_[h % (q_ - 1)]}; }

    /// Discrete log to base α; h in [0, q-2] with α^h = x.
    std::uint32_t dlog(Elem x) const {
        if (x.index == 0) throw DomainError("discrete log of zero is undefined");
        return log_[x.index];
    }

    /// Absolute trace F_{p^m} -> F_p, returned as an integer in [0, p).
    std::uint32_t trace(Elem x) const {
        Elem acc = zero();
        Elem f = x;
        for (unsigned k = 0; k < m_; ++k) {
            acc = add(acc, f);
            f = pow(f, p_);
        }
        // acc lies in the prime field, i.e. has index < p
        if (acc.index >= p_) throw std::logic_error("trace left the prime field");
        return acc.index;
    }

    /// Reference multiplication by polynomial arithmetic mod the modulus.
    Elem mul_poly(Elem a, Elem b) const {
        return to_elem(poly::mul_mod(to_poly(a), to_poly(b), modulus_, p_));
    }

    std::uint32_t add_index(std::uint32_t a, std::uint32_t b) const noexcept {
        if (m_ == 1) {
            const std::uint32_t s = a + b;
            return s >= p_ ? s - p_ : s;
        }
        if (p_ == 2) return a ^ b;
        std::uint32_t r = 0;
        for (unsigned i = 0; i < m_; ++i) {
            std::uint32_t d = a % p_ + b % p_;
            if (d >= p_) d -= p_;
            r += d * pow_[i];
            a /= p_;
            b /= p_;
        }
        return r;
    }

    std::uint32_t neg_index(std::uint32_t a) const noexcept {
        if (p_ == 2) return a;
        if (m_ == 1) return a == 0 ? 0 : p_ - a;
        std::uint32_t r = 0;
        for (unsigned i = 0; i < m_; ++i) {
            const std::uint32_t d = a % p_;
            r += (d == 0 ? 0 : p_ - d) * pow_[i];
            a /= p_;
        }
        return r;
    }

    friend bool operator==(const FieldTable& a, const FieldTable& b) {
        return a.p_ == b.p_ && a.m_ == b.m_ && a.modulus_ == b.modulus_ && a.alpha_ == b.alpha_ &&
               a.log_ == b.log_ && a.exp_ == b.exp_;
    }

private:
    Poly to_poly(Elem x) const {
        Poly f = coords(x);
        poly::trim(f);
        return f;
    }

    Elem to_elem(const Poly& f) const {
        std::uint32_t idx = 0;
        for (std::size_t i = 0; i < f.size(); ++i) idx += f[i] * pow_[i];
        return Elem{idx};
    }

    void find_primitive() {
        if (q_ == 2) {
            alpha_ = Elem{1};
            return;
        }
        const auto factors = detail::prime_factors(q_ - 1);
        for (std::uint32_t idx = 2; idx < q_; ++idx) {
            const Poly g = to_poly(Elem{idx});
            bool generator = true;
            for (std::uint64_t l : factors) {
                const Poly r = poly::pow_mod(g, (q_ - 1) / l, modulus_, p_);
                if (r == Poly{1}) {
                    generator = false;
                    break;
                }
            }
            if (generator) {
                alpha_ = Elem{idx};
                return;
            }
        }
        throw std::logic_error("no primitive element found");
    }

    void build_tables() {
        exp_.assign(q_ - 1, 0);
        log_.assign(q_, 0);
        const Poly a = to_poly(alpha_);
        Poly cur{1};
        for (std::uint32_t h = 0; h < q_ - 1; ++h) {
            const Elem e = to_elem(cur);
            if (e.index == 0 || (h > 0 && e.index == 1)) throw std::logic_error("alpha is not primitive");
            exp_[h] = e.index;
            log_[e.index] = h;
            cur = poly::mul_mod(cur, a, modulus_, p_);
        }
    }

    std::uint32_t p_;
    unsigned m_;
    std::uint32_t q_ = 0;
    Poly modulus_;
    std::vector<std::uint32_t> pow_;
    Elem alpha_{};
    std::vector<std::uint32_t> exp_;  // h -> index of α^h
    std::vector<std::uint32_t> log_;  // index -> h, log_[0] unused
};

inline std::shared_ptr<const FieldTable> build_field(FieldSpec spec) {
    return std::make_shared<const FieldTable>(std::move(spec));
}

inline std::shared_ptr<const FieldTable> build_field(std::uint32_t p, unsigned m) {
    return build_field(FieldSpec{p, m, std::nullopt});
}

/// Prime powers q = p^m with q <= q_max, ascending.
inline std::vector<std::pair<std::uint32_t, unsigned>> prime_powers_up_to(std::uint64_t q_max) {
    std::vector<std::pair<std::uint64_t, std::pair<std::uint32_t, unsigned>>> found;
    for (std::uint64_t p = 2; p <= q_max; ++p) {
        if (!detail::is_prime(p)) continue;
        std::uint64_t q = p;
        for (unsigned m = 1; q <= q_max; ++m, q *= p)
            found.push_back({q, {static_cast<std::uint32_t>(p), m}});
    }
    std::sort(found.begin(), found.end());
    std::vector<std::pair<std::uint32_t, unsigned>> out;
    out.reserve(found.size());
    for (auto& f : found) out.push_back(f.second);
    return out;
}

}  // namespace charsum
