#include <gtest/gtest.h>

#include <random>

#include "charsum/ff_core.hpp"
#include "oracles.hpp"

using namespace charsum;

TEST(FindIrreducible, SmallCases) {
    EXPECT_EQ(find_irreducible(2, 2), (Poly{1, 1, 1}));
    EXPECT_EQ(find_irreducible(3, 2), (Poly{1, 0, 1}));
    EXPECT_EQ(find_irreducible(2, 4), (Poly{1, 1, 0, 0, 1}));
}

TEST(FindIrreducible, PrimeFieldUsesX) { EXPECT_EQ(find_irreducible(7, 1), (Poly{0, 1})); }

TEST(FindIrreducible, MatchesBruteForceScan) {
    for (auto [p, m] : std::vector<std::pair<std::uint32_t, unsigned>>{
             {2, 2}, {2, 3}, {2, 4}, {2, 5}, {2, 6}, {2, 8}, {3, 2}, {3, 3}, {3, 4}, {5, 2}, {5, 3}, {7, 2}, {11, 2}, {13, 2}}) {
        SCOPED_TRACE(std::to_string(p) + "^" + std::to_string(m));
        EXPECT_EQ(find_irreducible(p, m), oracle::smallest_irreducible(p, m));
    }
}

TEST(FindIrreducible, RabinAgreesWithTrialDivision) {
    for (std::uint32_t p : {2u, 3u, 5u}) {
        for (unsigned m = 1; m <= 4; ++m) {
            std::uint64_t count = 1;
            for (unsigned i = 0; i < m; ++i) count *= p;
            for (std::uint64_t v = 0; v < count; ++v) {
                Poly f(m + 1);
                std::uint64_t t = v;
                for (unsigned i = 0; i < m; ++i) {
                    f[i] = t % p;
                    t /= p;
                }
                f[m] = 1;
                EXPECT_EQ(poly::is_irreducible(f, p), oracle::brute_irreducible(f, p));
            }
        }
    }
}

TEST(FindIrreducible, Errors) {
    EXPECT_THROW(find_irreducible(4, 2), DomainError);
    EXPECT_THROW(find_irreducible(2, 0), DomainError);
    EXPECT_THROW(find_irreducible(2, 17), DomainError);  // 2^17 over default cap
}

TEST(BuildField, PrimitiveElements) {
    EXPECT_EQ(build_field(3, 1)->alpha().index, 2u);
    EXPECT_EQ(build_field(7, 1)->alpha().index, 3u);
    const auto f4 = build_field(FieldSpec{2, 2, Poly{1, 1, 1}});
    EXPECT_EQ(f4->alpha().index, 2u);
    EXPECT_EQ(f4->dlog(Elem{1}), 0u);
    EXPECT_EQ(f4->dlog(Elem{2}), 1u);
    EXPECT_EQ(f4->dlog(Elem{3}), 2u);
    EXPECT_EQ(build_field(2, 1)->alpha().index, 1u);
}

TEST(BuildField, AlphaIsSmallestGeneratorPerOracle) {
    for (auto [p, m] : prime_powers_up_to(256)) {
        const auto f = build_field(p, m);
        oracle::NaiveField nf(p, m, f->modulus());
        std::uint32_t smallest = 0;
        for (std::uint32_t x = (f->q() == 2 ? 1 : 2); x < f->q(); ++x)
            if (nf.order(x) == f->q() - 1) {
                smallest = x;
                break;
            }
        EXPECT_EQ(f->alpha().index, smallest) << "q = " << f->q();
    }
}

TEST(BuildField, RejectsBadSpecs) {
    EXPECT_THROW(build_field(FieldSpec{2, 2, Poly{1, 0, 1}}), DomainError);  // x^2+1 = (x+1)^2
    EXPECT_THROW(build_field(FieldSpec{3, 2, Poly{1, 0}}), DomainError);     // wrong degree
    EXPECT_THROW(build_field(FieldSpec{3, 2, Poly{1, 0, 2}}), DomainError);  // not monic
    EXPECT_THROW(build_field(9, 1), DomainError);
    EXPECT_THROW(build_field(3, 11), DomainError);  // 177147 > cap
}

TEST(BuildField, UserModulusIsHonoured) {
    // x^4 + x^3 + 1 instead of the canonical x^4 + x + 1
    const auto f = build_field(FieldSpec{2, 4, Poly{1, 0, 0, 1, 1}});
    EXPECT_EQ(f->modulus(), (Poly{1, 0, 0, 1, 1}));
    oracle::NaiveField nf(2, 4, f->modulus());
    for (std::uint32_t a = 0; a < 16; ++a)
        for (std::uint32_t b = 0; b < 16; ++b) EXPECT_EQ(f->mul(Elem{a}, Elem{b}).index, nf.mul(a, b));
}

TEST(BuildField, DeterministicTables) {
    for (auto [p, m] : std::vector<std::pair<std::uint32_t, unsigned>>{{3, 4}, {2, 8}, {7, 2}, {101, 1}}) {
        EXPECT_TRUE(*build_field(p, m) == *build_field(p, m));
    }
}

TEST(Dlog, Examples) {
    const auto f7 = build_field(7, 1);
    EXPECT_EQ(f7->dlog(Elem{1}), 0u);
    EXPECT_EQ(f7->dlog(Elem{6}), 3u);
    const auto f4 = build_field(2, 2);
    EXPECT_EQ(f4->dlog(Elem{3}), 2u);
    EXPECT_THROW((void)f7->dlog(Elem{0}), DomainError);
}

TEST(FieldTable, ArithmeticMatchesNaiveField) {
    for (auto [p, m] : prime_powers_up_to(81)) {
        const auto f = build_field(p, m);
        oracle::NaiveField nf(p, m, f->modulus());
        for (std::uint32_t a = 0; a < f->q(); ++a) {
            for (std::uint32_t b = 0; b < f->q(); ++b) {
                ASSERT_EQ(f->add(Elem{a}, Elem{b}).index, nf.add(a, b));
                ASSERT_EQ(f->mul(Elem{a}, Elem{b}).index, nf.mul(a, b));
            }
            ASSERT_EQ(f->neg(Elem{a}).index, nf.neg(a));
        }
    }
}

TEST(FieldTable, DlogHomomorphismAndFrobenius) {
    std::mt19937 rng(7);
    for (auto [p, m] : std::vector<std::pair<std::uint32_t, unsigned>>{{3, 5}, {2, 10}, {5, 4}, {1009, 1}, {31, 2}}) {
        const auto f = build_field(p, m);
        std::uniform_int_distribution<std::uint32_t> nz(1, f->q() - 1), any(0, f->q() - 1);
        for (int s = 0; s < 200; ++s) {
            const Elem x{nz(rng)}, y{nz(rng)};
            EXPECT_EQ(f->dlog(f->mul_poly(x, y)), (f->dlog(x) + f->dlog(y)) % (f->q() - 1));
            const Elem a{any(rng)}, b{any(rng)};
            EXPECT_EQ(f->pow(f->add(a, b), p), f->add(f->pow(a, p), f->pow(b, p)));
        }
    }
}

TEST(FieldTable, CoordinatesRoundTrip) {
    const auto f = build_field(5, 3);
    for (std::uint32_t x = 0; x < f->q(); ++x) EXPECT_EQ(f->from_coords(f->coords(Elem{x})).index, x);
    EXPECT_THROW((void)f->from_coords({5, 0, 0}), DomainError);
    EXPECT_THROW((void)f->element(125), DomainError);
}

TEST(FieldTable, TraceLandsInPrimeFieldAndIsBalanced) {
    const auto f = build_field(3, 4);
    std::vector<int> hist(3, 0);
    for (std::uint32_t x = 0; x < f->q(); ++x) ++hist[f->trace(Elem{x})];
    EXPECT_EQ(hist, (std::vector<int>{27, 27, 27}));
}

TEST(FieldSpecParser, Grammar) {
    const auto a = parse_field_spec("13");
    EXPECT_EQ(a.p, 13u);
    EXPECT_EQ(a.m, 1u);
    const auto b = parse_field_spec("2^4");
    EXPECT_EQ(b.p, 2u);
    EXPECT_EQ(b.m, 4u);
    EXPECT_FALSE(b.modulus.has_value());
    const auto c = parse_field_spec("2^4:1,0,0,1,1");
    ASSERT_TRUE(c.modulus.has_value());
    EXPECT_EQ(*c.modulus, (Poly{1, 0, 0, 1, 1}));
    EXPECT_THROW(parse_field_spec("2^"), DomainError);
    EXPECT_THROW(parse_field_spec("x^2"), DomainError);
    EXPECT_THROW(parse_field_spec("3^2:"), DomainError);
    EXPECT_THROW(parse_field_spec("3^2:1,,1"), DomainError);
}

TEST(SizeCap, EnvironmentOverride) {
    ::setenv("CHARSUM_SIZE_CAP", "100", 1);
    EXPECT_THROW(build_field(101, 1), DomainError);
    EXPECT_NO_THROW(build_field(97, 1));
    ::unsetenv("CHARSUM_SIZE_CAP");
    EXPECT_NO_THROW(build_field(101, 1));
}
