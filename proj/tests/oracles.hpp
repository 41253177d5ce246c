// Slow reference computations used only by the tests. Nothing here calls the
// library's arithmetic; fields are rebuilt from the modulus by schoolbook
// polynomial multiplication.
#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <numbers>
#include <set>
#include <vector>

namespace oracle {

using Coeffs = std::vector<std::uint32_t>;

/// Naive GF(p^m) arithmetic over coordinate vectors.
struct NaiveField {
    std::uint32_t p;
    unsigned m;
    Coeffs modulus;  // monic, degree m, constant first
    std::uint32_t q;

    NaiveField(std::uint32_t p_, unsigned m_, Coeffs mod) : p(p_), m(m_), modulus(std::move(mod)), q(1) {
        for (unsigned i = 0; i < m; ++i) q *= p;
    }

    Coeffs coords(std::uint32_t idx) const {
        Coeffs c(m);
        for (unsigned i = 0; i < m; ++i) {
            c[i] = idx % p;
            idx /= p;
        }
        return c;
    }
    std::uint32_t index(const Coeffs& c) const {
        std::uint32_t idx = 0, w = 1;
        for (unsigned i = 0; i < m; ++i) {
            idx += c[i] * w;
            w *= p;
        }
        return idx;
    }
    std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
        Coeffs x = coords(a), y = coords(b);
        for (unsigned i = 0; i < m; ++i) x[i] = (x[i] + y[i]) % p;
        return index(x);
    }
    std::uint32_t neg(std::uint32_t a) const {
        Coeffs x = coords(a);
        for (auto& c : x) c = (p - c) % p;
        return index(x);
    }
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
        const Coeffs x = coords(a), y = coords(b);
        std::vector<std::uint64_t> prod(2 * m, 0);
        for (unsigned i = 0; i < m; ++i)
            for (unsigned j = 0; j < m; ++j) prod[i + j] = (prod[i + j] + std::uint64_t{x[i]} * y[j]) % p;
        // reduce using x^m = -(c_0 + ... + c_{m-1} x^{m-1})
        for (int d = static_cast<int>(2 * m) - 1; d >= static_cast<int>(m); --d) {
            const std::uint64_t c = prod[d];
            if (c == 0) continue;
            prod[d] = 0;
            for (unsigned i = 0; i < m; ++i)
                prod[d - m + i] = (prod[d - m + i] + (p - modulus[i]) % p * c) % p;
        }
        Coeffs r(m);
        for (unsigned i = 0; i < m; ++i) r[i] = static_cast<std::uint32_t>(prod[i]);
        return index(r);
    }
    std::uint32_t pow(std::uint32_t a, std::uint64_t e) const {
        std::uint32_t r = 1;
        for (std::uint64_t k = 0; k < e; ++k) r = mul(r, a);
        return r;
    }
    std::uint64_t order(std::uint32_t a) const {
        std::uint32_t x = a;
        std::uint64_t k = 1;
        while (x != 1) {
            x = mul(x, a);
            ++k;
            if (k > q) return 0;
        }
        return k;
    }
};

/// Irreducible iff no monic polynomial of degree 1..m/2 divides f.
inline bool brute_irreducible(const Coeffs& f, std::uint32_t p) {
    const unsigned m = static_cast<unsigned>(f.size() - 1);
    for (unsigned d = 1; d <= m / 2; ++d) {
        std::uint64_t count = 1;
        for (unsigned i = 0; i < d; ++i) count *= p;
        for (std::uint64_t v = 0; v < count; ++v) {
            Coeffs g(d + 1);
            std::uint64_t t = v;
            for (unsigned i = 0; i < d; ++i) {
                g[i] = t % p;
                t /= p;
            }
            g[d] = 1;
            Coeffs r = f;
            for (int k = static_cast<int>(m); k >= static_cast<int>(d); --k) {
                const std::uint32_t c = r[k];
                if (c == 0) continue;
                for (unsigned i = 0; i <= d; ++i) r[k - d + i] = (r[k - d + i] + p - (c * g[i]) % p) % p;
            }
            bool zero = true;
            for (unsigned i = 0; i < d; ++i) zero = zero && r[i] == 0;
            if (zero) return false;
        }
    }
    return true;
}

/// Smallest-value monic irreducible of degree m by brute force.
inline Coeffs smallest_irreducible(std::uint32_t p, unsigned m) {
    std::uint64_t q = 1;
    for (unsigned i = 0; i < m; ++i) q *= p;
    for (std::uint64_t v = 0; v < q; ++v) {
        Coeffs f(m + 1);
        std::uint64_t t = v;
        for (unsigned i = 0; i < m; ++i) {
            f[i] = t % p;
            t /= p;
        }
        f[m] = 1;
        if (brute_irreducible(f, p)) return f;
    }
    return {};
}

/// The set of nonzero n-th powers, found by raising every element to the n-th power.
inline std::set<std::uint32_t> nth_powers(const NaiveField& f, unsigned n) {
    std::set<std::uint32_t> s;
    for (std::uint32_t x = 1; x < f.q; ++x) s.insert(f.pow(x, n));
    return s;
}

/// Label of x relative to generator g: smallest h with g^h = x, reduced mod n.
inline std::vector<int> labels_by_generator(const NaiveField& f, std::uint32_t g, unsigned n) {
    std::vector<int> lab(f.q, -1);
    std::uint32_t x = 1;
    for (std::uint32_t h = 0; h + 1 < f.q; ++h) {
        lab[x] = static_cast<int>(h % n);
        x = f.mul(x, g);
    }
    return lab;
}

/// Ordered pairs (x, y) over the whole field with x + y = β, label(x) = j, label(y) = i.
inline std::uint64_t pair_count(const NaiveField& f, const std::vector<int>& lab, std::uint32_t beta, int i, int j) {
    std::uint64_t c = 0;
    for (std::uint32_t x = 0; x < f.q; ++x)
        for (std::uint32_t y = 0; y < f.q; ++y)
            if (f.add(x, y) == beta && lab[x] == j && lab[y] == i) ++c;
    return c;
}

inline std::complex<double> chi_value(int label, unsigned n) {
    if (label < 0) return 0.0;
    return std::polar(1.0, 2.0 * std::numbers::pi * label / n);
}

/// Dense convolution over coordinates: c[x + y] += a[x] b[y].
inline std::vector<std::int64_t> convolve(const NaiveField& f, const std::vector<std::int64_t>& a,
                                          const std::vector<std::int64_t>& b) {
    std::vector<std::int64_t> c(f.q, 0);
    for (std::uint32_t x = 0; x < f.q; ++x)
        for (std::uint32_t y = 0; y < f.q; ++y) c[f.add(x, y)] += a[x] * b[y];
    return c;
}

/// Shift count straight from the definition.
inline std::uint64_t shift_count(const NaiveField& f, const std::vector<int>& lab, const std::vector<std::uint32_t>& es) {
    std::uint64_t n = 0;
    for (std::uint32_t beta = 0; beta < f.q; ++beta) {
        std::set<int> ls;
        bool ok = true;
        for (auto e : es) {
            const int l = lab[f.add(beta, e)];
            if (l < 0) ok = false;
            ls.insert(l);
        }
        if (ok && ls.size() == 1) ++n;
    }
    return n;
}

/// Max shift count over all triples of a label class, without any symmetry reduction.
inline std::uint64_t max_shift_count3(const NaiveField& f, const std::vector<int>& lab, int cls) {
    std::vector<std::uint32_t> c;
    for (std::uint32_t x = 1; x < f.q; ++x)
        if (lab[x] == cls) c.push_back(x);
    std::uint64_t best = 0;
    for (std::size_t a = 0; a < c.size(); ++a)
        for (std::size_t b = a + 1; b < c.size(); ++b)
            for (std::size_t d = b + 1; d < c.size(); ++d) best = std::max(best, shift_count(f, lab, {c[a], c[b], c[d]}));
    return best;
}

}  // namespace oracle
