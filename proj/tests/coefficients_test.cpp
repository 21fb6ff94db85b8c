#include <algorithm>
#include <random>

#include <gtest/gtest.h>

#include "lym/coefficients.hpp"
#include "oracles.hpp"

using namespace lym;

TEST(Compositions, CountsAndOrder) {
    auto all = compositions(4, 3);
    EXPECT_EQ(all.size(), 15u);  // binom(6,2)
    EXPECT_TRUE(std::is_sorted(all.begin(), all.end()));
    EXPECT_EQ(compositions(4, 3, 1).size(), 3u);
    EXPECT_EQ(to_string(Composition{1, 1, 2}), "1,1,2");
    EXPECT_TRUE(compositions(2, 3, 1).empty());
}

TEST(Multinomial, Examples) {
    EXPECT_EQ(multinomial(4, {1, 1, 2}), 12);
    EXPECT_EQ(multinomial(4, {2, 1, 1}), 12);
    for (unsigned n = 0; n < 8; ++n) EXPECT_EQ(multinomial(n, {n}), 1);
    EXPECT_THROW(multinomial(4, {1, 1}), Error);
}

TEST(Multinomial, PrefixBinomialsAndPermutation) {
    for (unsigned n = 0; n <= 8; ++n)
        for (unsigned r = 1; r <= 4; ++r)
            for (const auto& a : compositions(n, r)) {
                BigInt prod = 1;
                unsigned rest = n;
                for (unsigned p : a.parts) {
                    prod *= binomial(rest, p);
                    rest -= p;
                }
                EXPECT_EQ(multinomial(n, a), prod);
                auto rev = a;
                std::reverse(rev.parts.begin(), rev.parts.end());
                EXPECT_EQ(multinomial(n, rev), prod);
            }
}

TEST(Multinomial, TotalIsRToTheN) {
    for (unsigned n = 0; n <= 8; ++n)
        for (unsigned r = 1; r <= 4; ++r) {
            BigInt total = 0;
            for (const auto& a : compositions(n, r)) total += multinomial(n, a);
            EXPECT_EQ(total, pow_ui(BigInt(r), n));
        }
}

TEST(QMultinomial, Examples) {
    EXPECT_EQ(q_multinomial(3, {1, 2}, 2), 7);
    EXPECT_EQ(q_multinomial(2, {1, 1}, 2), 3);
    EXPECT_EQ(q_multinomial(5, {5}, 3), 1);
    EXPECT_EQ(q_decomposition_count(3, {1, 2}, 2), 28);
    EXPECT_EQ(q_decomposition_count(2, {1, 1}, 2), 6);
    EXPECT_EQ(q_decomposition_count(4, {4}, 5), 1);
    EXPECT_THROW(q_multinomial(3, {1, 1}, 2), Error);
    EXPECT_THROW(q_multinomial(2, {1, 1}, 1), Error);
}

TEST(QMultinomial, TelescopesIntoQBinomials) {
    for (unsigned q : {2u, 3u, 4u})
        for (unsigned n = 0; n <= 8; ++n)
            for (unsigned r = 1; r <= 3; ++r)
                for (const auto& a : compositions(n, r)) {
                    BigInt prod = 1;
                    unsigned rest = n;
                    for (unsigned p : a.parts) {
                        prod *= q_binomial(rest, p, q);
                        rest -= p;
                    }
                    EXPECT_EQ(q_multinomial(n, a, q), prod);
                }
}

TEST(QBinomial, GaussianFromProductFormula) {
    // [n choose k]_q as prod (q^(n-i) - 1) / (q^(i+1) - 1)
    for (unsigned q : {2u, 3u, 5u})
        for (unsigned n = 0; n <= 7; ++n)
            for (unsigned k = 0; k <= n; ++k) {
                BigRat v = 1;
                for (unsigned i = 0; i < k; ++i)
                    v *= BigRat(pow_ui(BigInt(q), n - i) - 1) / BigRat(pow_ui(BigInt(q), i + 1) - 1);
                EXPECT_EQ(BigRat(q_binomial(n, k, q)), v);
            }
}

TEST(QDecomposition, MatchesVectorSetOracle) {
    struct Case {
        unsigned q, n, r;
    };
    for (Case c : {Case{2, 2, 2}, Case{2, 3, 2}, Case{2, 3, 3}, Case{3, 2, 2}, Case{2, 2, 3}}) {
        oracle::VectorSpace space(c.q, c.n);
        const auto counts = space.decomposition_counts(c.r);
        for (const auto& a : compositions(c.n, c.r)) {
            auto it = counts.find(a.parts);
            const std::uint64_t expected = it == counts.end() ? 0 : it->second;
            EXPECT_EQ(q_decomposition_count(c.n, a, c.q), expected) << c.q << " " << c.n << " " << to_string(a);
        }
    }
}

TEST(Multiflag, Examples) {
    EXPECT_EQ(multiflag_coefficient(2, {1, 1}), SymReal(make_rat(1, 2), 1));
    for (unsigned n = 1; n <= 6; ++n) EXPECT_EQ(multiflag_coefficient(n, {n}), SymReal(1));
    EXPECT_THROW(multiflag_coefficient(3, {0, 3}), Error);
    EXPECT_THROW(multiflag_coefficient(3, {1, 1}), Error);
}

TEST(Multiflag, MatchesGammaOracle) {
    for (unsigned n = 1; n <= 10; ++n)
        for (unsigned r = 1; r <= std::min(n, 4u); ++r)
            for (const auto& a : compositions(n, r, 1)) {
                oracle::HalfPi v = oracle::multiflag(n, a.parts);
                ASSERT_EQ(v.half % 2, 0);
                EXPECT_EQ(multiflag_coefficient(n, a), SymReal(v.coeff, static_cast<unsigned>(v.half / 2)))
                    << n << " " << to_string(a);
            }
}

TEST(Multiflag, TwoPartClosedForm) {
    for (unsigned n = 2; n <= 12; ++n)
        for (unsigned k = 1; k < n; ++k) {
            SymReal expect = SymReal(BigRat(binomial(n, k))) * ball_volume(n) / (ball_volume(k) * ball_volume(n - k));
            EXPECT_EQ(multiflag_coefficient(n, {k, n - k}), expect);
        }
}

TEST(RealFactorial, FlagTotal) {
    for (unsigned n = 1; n <= 12; ++n)
        EXPECT_EQ(real_factorial(n), SymReal(BigRat(factorial(n)) / BigRat(BigInt(1) << n)) * ball_volume(n));
}

TEST(Divisor, RankCounts) {
    auto w = divisor_rank_counts(12);
    EXPECT_EQ(w, (std::vector<BigInt>{1, 2, 2, 1}));
    EXPECT_EQ(divisor_rank_counts(1), std::vector<BigInt>{1});
    EXPECT_EQ(divisor_rank_counts(97), (std::vector<BigInt>{1, 1}));
}

TEST(Divisor, RankCountsMatchBruteForce) {
    for (std::uint64_t n = 1; n <= 400; ++n) {
        auto w = divisor_rank_counts(n);
        std::vector<BigInt> expect(w.size(), 0);
        for (auto d : oracle::divisors(n)) expect.at(oracle::omega_big(d)) += 1;
        EXPECT_EQ(w, expect) << n;
    }
}

TEST(Divisor, DecompositionCountExamples) {
    EXPECT_EQ(divisor_decomposition_count(12, {1, 2}), 2);
    EXPECT_EQ(divisor_decomposition_count(12, {0, 3}), 1);
    EXPECT_EQ(divisor_decomposition_count(13, {1}), 1);
    EXPECT_THROW(divisor_decomposition_count(12, {1, 1}), Error);
}

TEST(Divisor, DecompositionCountMatchesBruteForce) {
    for (std::uint64_t n : {1ull, 12ull, 36ull, 60ull, 72ull, 210ull, 360ull}) {
        const unsigned rk = oracle::omega_big(n);
        for (unsigned r = 1; r <= 3; ++r)
            for (const auto& a : compositions(rk, r))
                EXPECT_EQ(divisor_decomposition_count(n, a), oracle::ordered_factorizations(n, a.parts))
                    << n << " " << to_string(a);
    }
}

TEST(Factorize, Examples) {
    auto f = factorize(360);
    ASSERT_EQ(f.size(), 3u);
    EXPECT_EQ(f[0].prime, 2u);
    EXPECT_EQ(f[0].exponent, 3u);
    EXPECT_EQ(big_omega(f), 6u);
    EXPECT_TRUE(factorize(1).empty());
}

TEST(SigmaTau, Examples) {
    EXPECT_EQ(sigma_tau(ChainParams{1, 2, 2}), (SigmaTau{2, 4}));
    EXPECT_EQ(sigma_tau(ChainParams{1, 3, 3}), (SigmaTau{3, 9}));
    EXPECT_EQ(sigma_tau(ChainParams{7}), (SigmaTau{1, 7}));
    EXPECT_THROW(ChainParams({1, 0}), Error);
}

TEST(SumLargest, RemarkBounds) {
    std::vector<BigInt> values;
    for (const auto& a : compositions(4, 3)) values.push_back(multinomial(4, a));
    EXPECT_EQ(bound_sum_largest(values, 2).sum, 24);
    EXPECT_EQ(bound_sum_largest(values, 3).sum, 36);
    BigInt total = 0;
    for (const auto& v : values) total += v;
    EXPECT_EQ(bound_sum_largest(values, 1000).sum, total);
    EXPECT_EQ(bound_sum_largest(values, 3).chosen, (std::vector<BigInt>{12, 12, 12}));
}

TEST(SumLargest, SymRealSelection) {
    std::vector<SymReal> values{SymReal(3), SymReal(1, 1), SymReal(make_rat(1, 2), 2)};
    auto top = bound_sum_largest(values, 2, SymRealGreater{});
    // pi^2/2 ~ 4.93 > pi ~ 3.14 > 3
    ASSERT_EQ(top.chosen.size(), 2u);
    EXPECT_EQ(top.chosen[0], SymReal(make_rat(1, 2), 2));
    EXPECT_EQ(top.chosen[1], SymReal(1, 1));
    PiSum expect;
    expect += SymReal(make_rat(1, 2), 2);
    expect += SymReal(1, 1);
    EXPECT_EQ(top.sum, expect);
}
