#include <gtest/gtest.h>

#include <set>

#include "charsum/character.hpp"
#include "oracles.hpp"

using namespace charsum;

namespace {

std::vector<std::uint32_t> indices(const std::vector<Elem>& xs) {
    std::vector<std::uint32_t> v;
    for (Elem x : xs) v.push_back(x.index);
    return v;
}

}  // namespace

TEST(Partition, F7Quadratic) {
    const CosetPartition part(build_field(7, 1), CharacterOrder{2});
    EXPECT_EQ(indices(part.coset(0)), (std::vector<std::uint32_t>{1, 2, 4}));
    EXPECT_EQ(indices(part.coset(1)), (std::vector<std::uint32_t>{3, 5, 6}));
}

TEST(Partition, F7Cubic) {
    const CosetPartition part(build_field(7, 1), CharacterOrder{3});
    EXPECT_EQ(indices(part.coset(0)), (std::vector<std::uint32_t>{1, 6}));
    EXPECT_EQ(indices(part.coset(1)), (std::vector<std::uint32_t>{3, 4}));
    EXPECT_EQ(indices(part.coset(2)), (std::vector<std::uint32_t>{2, 5}));
}

TEST(Partition, F4Cubic) {
    const auto f = build_field(2, 2);
    const CosetPartition part(f, CharacterOrder{3});
    EXPECT_EQ(indices(part.coset(0)), (std::vector<std::uint32_t>{1}));
    EXPECT_EQ(indices(part.coset(1)), (std::vector<std::uint32_t>{f->alpha().index}));
    EXPECT_EQ(indices(part.coset(2)), (std::vector<std::uint32_t>{f->mul(f->alpha(), f->alpha()).index}));
}

TEST(Partition, UnsupportedCharacters) {
    EXPECT_THROW(CosetPartition(build_field(2, 3), CharacterOrder{3}), DomainError);
    EXPECT_THROW(CosetPartition(build_field(2, 4), CharacterOrder{2}), DomainError);
    EXPECT_THROW(CosetPartition(build_field(5, 1), CharacterOrder{3}), DomainError);
    EXPECT_THROW(CosetPartition(build_field(7, 1), CharacterOrder{5}), DomainError);
    EXPECT_NO_THROW(CosetPartition(build_field(5, 2), CharacterOrder{3}));
}

TEST(Partition, CosetZeroIsNthPowers) {
    for (auto [p, m] : prime_powers_up_to(128)) {
        const auto f = build_field(p, m);
        oracle::NaiveField nf(p, m, f->modulus());
        for (unsigned n : {2u, 3u}) {
            if (!character_exists(*f, n)) continue;
            const CosetPartition part(f, CharacterOrder{n});
            const auto powers = oracle::nth_powers(nf, n);
            const auto c0 = indices(part.coset(0));
            EXPECT_EQ(std::set<std::uint32_t>(c0.begin(), c0.end()), powers) << "q=" << f->q() << " n=" << n;
            // coset j = α^j coset 0
            for (unsigned j = 1; j < n; ++j) {
                std::set<std::uint32_t> shifted;
                for (auto x : powers) shifted.insert(nf.mul(nf.pow(f->alpha().index, j), x));
                const auto cj = indices(part.coset(j));
                EXPECT_EQ(std::set<std::uint32_t>(cj.begin(), cj.end()), shifted);
            }
        }
    }
}

TEST(Partition, Invariants) {
    for (auto [p, m] : prime_powers_up_to(200)) {
        const auto f = build_field(p, m);
        for (unsigned n : {2u, 3u}) {
            if (!character_exists(*f, n)) continue;
            const CosetPartition part(f, CharacterOrder{n});
            for (unsigned j = 0; j < n; ++j) EXPECT_EQ(part.coset(j).size(), (f->q() - 1) / n);
            const unsigned m1 = part.minus_one_label();
            if (n == 2) EXPECT_EQ(m1 == 0, f->q() % 4 == 1) << f->q();
            else EXPECT_EQ(m1, 0u) << f->q();
            EXPECT_EQ(part.chi(f->zero()), EisensteinInt{});
            for (std::uint32_t x = 1; x < std::min<std::uint32_t>(f->q(), 40); ++x)
                for (std::uint32_t y = 1; y < std::min<std::uint32_t>(f->q(), 40); ++y)
                    EXPECT_EQ(part.label(f->mul(Elem{x}, Elem{y})), (part.label(Elem{x}) + part.label(Elem{y})) % n);
        }
    }
}

TEST(Partition, ConjugateSwapsLabelsOneAndTwo) {
    const auto f = build_field(13, 1);
    const CosetPartition a(f, CharacterOrder{3}), b(f, CharacterOrder{3}, true);
    for (std::uint32_t x = 1; x < 13; ++x) {
        EXPECT_EQ(b.label(Elem{x}), (3 - a.label(Elem{x})) % 3);
        EXPECT_EQ(b.chi(Elem{x}), a.chi_bar(Elem{x}));
    }
}

TEST(CharSumMoment, Examples) {
    const CosetPartition f7(build_field(7, 1), CharacterOrder{2});
    EXPECT_EQ(char_sum_moment(f7, MomentMode::First), EisensteinInt{0});
    EXPECT_EQ(char_sum_moment(f7, MomentMode::Shifted, Elem{1}), EisensteinInt{-1});
    const CosetPartition f4(build_field(2, 2), CharacterOrder{3});
    EXPECT_EQ(char_sum_moment(f4, MomentMode::Shifted, Elem{1}), EisensteinInt{-1});
    EXPECT_THROW(char_sum_moment(f7, MomentMode::Shifted, Elem{0}), DomainError);
}

TEST(CharSumMoment, ExhaustiveAgainstComplexOracle) {
    for (auto [p, m] : prime_powers_up_to(64)) {
        const auto f = build_field(p, m);
        oracle::NaiveField nf(p, m, f->modulus());
        for (unsigned n : {2u, 3u}) {
            if (!character_exists(*f, n)) continue;
            const CosetPartition part(f, CharacterOrder{n});
            const auto lab = oracle::labels_by_generator(nf, f->alpha().index, n);
            EXPECT_EQ(char_sum_moment(part, MomentMode::First), EisensteinInt{0});
            for (std::uint32_t g = 1; g < f->q(); ++g) {
                std::complex<double> s = 0;
                for (std::uint32_t x = 0; x < f->q(); ++x)
                    s += oracle::chi_value(lab[x], n) * std::conj(oracle::chi_value(lab[nf.add(x, g)], n));
                EXPECT_NEAR(s.real(), -1.0, 1e-9);
                EXPECT_NEAR(s.imag(), 0.0, 1e-9);
                EXPECT_EQ(char_sum_moment(part, MomentMode::Shifted, Elem{g}), EisensteinInt{-1});
            }
        }
    }
}

TEST(Winterhof, Examples) {
    const CosetPartition f7(build_field(7, 1), CharacterOrder{2});
    EXPECT_EQ(winterhof_counts(f7, Elem{1}), (std::vector<std::uint64_t>{2, 3}));
    const CosetPartition f4(build_field(2, 2), CharacterOrder{3});
    EXPECT_EQ(winterhof_counts(f4, Elem{1}), (std::vector<std::uint64_t>{0, 1, 1}));
    const CosetPartition f9(build_field(3, 2), CharacterOrder{2});
    for (std::uint32_t x = 1; x < 9; ++x) EXPECT_EQ(winterhof_counts(f9, Elem{x}), (std::vector<std::uint64_t>{3, 4}));
    EXPECT_THROW(winterhof_counts(f7, Elem{0}), DomainError);
}

TEST(Winterhof, ChainHoldsEverywhere) {
    for (auto [p, m] : prime_powers_up_to(300)) {
        const auto f = build_field(p, m);
        for (unsigned n : {2u, 3u}) {
            if (!character_exists(*f, n)) continue;
            const CosetPartition part(f, CharacterOrder{n});
            const std::uint64_t s = (f->q() - 1) / n;
            for (std::uint32_t x = 1; x < f->q(); ++x) {
                const auto sigma = winterhof_counts(part, Elem{x});
                ASSERT_EQ(sigma[0] + 1, s);
                for (unsigned i = 1; i < n; ++i) ASSERT_EQ(sigma[i], s);
            }
        }
    }
}
