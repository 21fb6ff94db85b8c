#include <random>

#include <gtest/gtest.h>

#include "lym/coefficients.hpp"
#include "lym/lattice.hpp"
#include "oracles.hpp"

using namespace lym;

TEST(Context, Caps) {
    EXPECT_NO_THROW(LatticeCtx::boolean(24));
    EXPECT_THROW(LatticeCtx::boolean(25), Error);
    EXPECT_THROW(LatticeCtx::boolean(0), Error);
    EXPECT_THROW(LatticeCtx::subspace(4, 2), Error);
    EXPECT_THROW(LatticeCtx::subspace(2, 7), Error);
    EXPECT_THROW(LatticeCtx::subspace(1021, 3), Error);
    EXPECT_NO_THROW(LatticeCtx::subspace(3, 6));
    EXPECT_EQ(LatticeCtx::divisor(360).top_rank(), 6u);
}

TEST(Leq, Examples) {
    auto b4 = LatticeCtx::boolean(4);
    EXPECT_TRUE(leq(b4, make_subset(b4, {1}), make_subset(b4, {1, 3})));
    EXPECT_FALSE(leq(b4, make_subset(b4, {2}), make_subset(b4, {1, 3})));
    auto l22 = LatticeCtx::subspace(2, 2);
    auto line = make_subspace(l22, {{1, 0}});
    EXPECT_TRUE(leq(l22, line, line));
    auto d12 = LatticeCtx::divisor(12);
    EXPECT_FALSE(leq(d12, make_divisor(d12, 4), make_divisor(d12, 6)));
    EXPECT_TRUE(leq(d12, make_divisor(d12, 2), make_divisor(d12, 6)));
    EXPECT_THROW(leq(b4, line, line), Error);
}

TEST(Leq, PartialOrderOnRandomTriples) {
    std::mt19937_64 rng(21);
    for (auto ctx : {LatticeCtx::boolean(5), LatticeCtx::subspace(2, 3), LatticeCtx::subspace(3, 3), LatticeCtx::divisor(360)}) {
        auto all = all_elements(ctx);
        std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
        for (int i = 0; i < 400; ++i) {
            const auto &x = all[pick(rng)], &y = all[pick(rng)], &z = all[pick(rng)];
            EXPECT_TRUE(leq(ctx, x, x));
            if (leq(ctx, x, y) && leq(ctx, y, x)) { EXPECT_EQ(x, y); }
            if (leq(ctx, x, y) && leq(ctx, y, z)) { EXPECT_TRUE(leq(ctx, x, z)); }
            if (leq(ctx, x, y) && !(x == y)) { EXPECT_LT(rank(ctx, x), rank(ctx, y)); }
        }
    }
}

TEST(EnumerateRank, Examples) {
    auto b3 = LatticeCtx::boolean(3);
    auto two = enumerate_rank(b3, 2);
    ASSERT_EQ(two.size(), 3u);
    EXPECT_EQ(two[0], make_subset(b3, {1, 2}));
    EXPECT_EQ(two[1], make_subset(b3, {1, 3}));
    EXPECT_EQ(two[2], make_subset(b3, {2, 3}));
    EXPECT_EQ(enumerate_rank(LatticeCtx::subspace(2, 3), 1).size(), 7u);
    auto d12 = LatticeCtx::divisor(12);
    auto mid = enumerate_rank(d12, 2);
    ASSERT_EQ(mid.size(), 2u);
    EXPECT_EQ(divisor_value(d12, std::get<DivisorElem>(mid[0])), 4u);
    EXPECT_EQ(divisor_value(d12, std::get<DivisorElem>(mid[1])), 6u);
    EXPECT_THROW(enumerate_rank(b3, 4), Error);
}

TEST(EnumerateRank, SizesMatchCoefficients) {
    for (unsigned n = 1; n <= 8; ++n)
        for (unsigned k = 0; k <= n; ++k) EXPECT_EQ(enumerate_rank(LatticeCtx::boolean(n), k).size(), binomial(n, k));
    for (unsigned q : {2u, 3u, 5u})
        for (unsigned n = 1; n <= (q == 2 ? 5u : 3u); ++n)
            for (unsigned k = 0; k <= n; ++k) {
                auto elems = enumerate_rank(LatticeCtx::subspace(q, n), k);
                EXPECT_EQ(BigInt(static_cast<unsigned long>(elems.size())), q_binomial(n, k, q));
                std::set<LatticeElem> unique(elems.begin(), elems.end());
                EXPECT_EQ(unique.size(), elems.size());
            }
    for (std::uint64_t n : {1ull, 12ull, 360ull, 5040ull, 1024ull}) {
        auto ctx = LatticeCtx::divisor(n);
        auto w = divisor_rank_counts(n);
        for (unsigned k = 0; k < w.size(); ++k) EXPECT_EQ(BigInt(static_cast<unsigned long>(enumerate_rank(ctx, k).size())), w[k]);
    }
}

TEST(EnumerateRank, SubspacesMatchVectorSetOracle) {
    for (auto [q, n] : {std::pair{2u, 3u}, std::pair{3u, 2u}, std::pair{2u, 4u}}) {
        oracle::VectorSpace space(q, n);
        auto subs = space.all_subspaces();
        std::vector<std::size_t> by_dim(n + 1, 0);
        for (auto s : subs) ++by_dim[space.dim(s)];
        auto ctx = LatticeCtx::subspace(q, n);
        for (unsigned k = 0; k <= n; ++k) EXPECT_EQ(enumerate_rank(ctx, k).size(), by_dim[k]);
    }
}

TEST(Rref, BasisIndependent) {
    std::mt19937_64 rng(22);
    auto ctx = LatticeCtx::subspace(3, 4);
    std::uniform_int_distribution<unsigned> entry(0, 2);
    for (int i = 0; i < 200; ++i) {
        gf::Matrix rows(2, std::vector<std::uint32_t>(4));
        for (auto& row : rows)
            for (auto& v : row) v = entry(rng);
        auto a = make_subspace(ctx, rows);
        // another basis of the same row space: r0 + c r1, r1 (c != 0 keeps rank)
        gf::Matrix other = rows;
        for (unsigned c = 0; c < 4; ++c) other[0][c] = (rows[0][c] + 2 * rows[1][c]) % 3;
        std::swap(other[0], other[1]);
        EXPECT_EQ(a, make_subspace(ctx, other));
        EXPECT_EQ(make_subspace(ctx, subspace_rows(ctx, std::get<Subspace>(a))), a);
    }
}

TEST(Decomposition, Examples) {
    auto b4 = LatticeCtx::boolean(4);
    EXPECT_TRUE(is_decomposition(b4, {make_subset(b4, {1}), make_subset(b4, {2}), make_subset(b4, {3, 4})}));
    EXPECT_FALSE(is_decomposition(b4, {make_subset(b4, {1, 2}), make_subset(b4, {2}), make_subset(b4, {3, 4})}));
    auto l22 = LatticeCtx::subspace(2, 2);
    auto line = make_subspace(l22, {{1, 0}});
    EXPECT_FALSE(is_decomposition(l22, {line, line}));
    EXPECT_TRUE(is_decomposition(l22, {line, make_subspace(l22, {{1, 1}})}));
    auto d12 = LatticeCtx::divisor(12);
    EXPECT_TRUE(is_decomposition(d12, {make_divisor(d12, 2), make_divisor(d12, 6)}));
    EXPECT_FALSE(is_decomposition(d12, {make_divisor(d12, 2), make_divisor(d12, 4)}));
}

TEST(Complements, Examples) {
    auto l22 = LatticeCtx::subspace(2, 2);
    EXPECT_EQ(count_complements(l22, make_subspace(l22, {{0, 1}})), 2u);
    auto l23 = LatticeCtx::subspace(2, 3);
    EXPECT_EQ(count_complements(l23, make_subspace(l23, {{1, 0, 0}})), 4u);
    EXPECT_EQ(count_complements(l23, top(l23)), 1u);
    EXPECT_THROW(count_complements(LatticeCtx::boolean(3), make_subset(LatticeCtx::boolean(3), {1})), Error);
}

TEST(Complements, ClosedFormAndOracle) {
    for (auto [q, n] : {std::pair{2u, 2u}, std::pair{2u, 3u}, std::pair{3u, 2u}, std::pair{3u, 3u}}) {
        auto ctx = LatticeCtx::subspace(q, n);
        for (const auto& x : all_elements(ctx)) {
            const unsigned k = rank(ctx, x);
            const BigInt closed = pow_ui(BigInt(q), k * (n - k));
            EXPECT_EQ(BigInt(static_cast<unsigned long>(count_complements(ctx, x))), closed);
        }
        oracle::VectorSpace space(q, n);
        for (auto s : space.all_subspaces()) {
            const unsigned k = space.dim(s);
            EXPECT_EQ(BigInt(static_cast<unsigned long>(space.complements(s))), pow_ui(BigInt(q), k * (n - k)));
        }
    }
}

TEST(LevelSizes, Boolean) {
    EXPECT_EQ(level_sizes(LatticeCtx::boolean(4)), (std::vector<std::uint64_t>{1, 4, 6, 4, 1}));
}
