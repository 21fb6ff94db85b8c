#include <gtest/gtest.h>

#include "lym/family.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace lym;
using support::subsets;

TEST(Family, SetSemanticsAndValidation) {
    auto b4 = LatticeCtx::boolean(4);
    Family f(b4, Mode::decomposition, 3);
    EXPECT_TRUE(f.insert(subsets(b4, {{1}, {2}, {3, 4}})));
    EXPECT_FALSE(f.insert(subsets(b4, {{1}, {2}, {3, 4}})));
    EXPECT_EQ(f.size(), 1u);
    EXPECT_THROW(f.insert(subsets(b4, {{1}, {2}})), Error);
    EXPECT_THROW(f.insert(subsets(b4, {{1}, {1, 2}, {3, 4}})), Error);

    Family chains(b4, Mode::multichain, 2);
    EXPECT_TRUE(chains.insert(subsets(b4, {{1}, {1}})));
    EXPECT_THROW(chains.insert(subsets(b4, {{1, 2}, {1}})), Error);
    Family strict(b4, Mode::multichain, 2, true);
    EXPECT_THROW(strict.insert(subsets(b4, {{1}, {1}})), Error);
}

TEST(Project, Examples) {
    auto f = support::remark24();
    auto b4 = f.ctx();
    auto first = project(f, 0);
    EXPECT_EQ(first, (std::set<LatticeElem>{make_subset(b4, {1}), make_subset(b4, {2}), make_subset(b4, {3}), make_subset(b4, {4})}));

    Family single(b4, Mode::decomposition, 3);
    single.insert(subsets(b4, {{1}, {2}, {3, 4}}));
    EXPECT_EQ(project(single, 2).size(), 1u);

    Family two(b4, Mode::decomposition, 3);
    two.insert(subsets(b4, {{1}, {3}, {2, 4}}));
    two.insert(subsets(b4, {{2, 3}, {1}, {4}}));
    EXPECT_EQ(project(two, 1), (std::set<LatticeElem>{make_subset(b4, {3}), make_subset(b4, {1})}));
    EXPECT_THROW(project(two, 3), Error);
}

TEST(Stratify, Examples) {
    auto strata = stratify(support::remark24());
    ASSERT_EQ(strata.size(), 2u);
    EXPECT_EQ(strata.at(Composition{1, 1, 2}).size(), 12u);
    EXPECT_EQ(strata.at(Composition{1, 2, 1}).size(), 12u);

    auto b4 = LatticeCtx::boolean(4);
    EXPECT_TRUE(stratify(Family(b4, Mode::decomposition, 2)).empty());

    Family chain(b4, Mode::multichain, 2);
    chain.insert(subsets(b4, {{1}, {1, 2}}));
    auto cs = stratify(chain);
    ASSERT_EQ(cs.size(), 1u);
    EXPECT_EQ(cs.begin()->first, (Composition{1, 1}));
    EXPECT_EQ(with_final_part(b4, cs.begin()->first), (Composition{1, 1, 2}));
}

TEST(EnumerateAll, Examples) {
    EXPECT_EQ(enumerate_all(LatticeCtx::boolean(4), Mode::decomposition, 3).size(), 81u);
    EXPECT_EQ(enumerate_all(LatticeCtx::divisor(12), Mode::decomposition, 2).size(), 6u);
    auto l22 = enumerate_all(LatticeCtx::subspace(2, 2), Mode::decomposition, 2);
    EXPECT_EQ(l22.size(), 8u);
    // lexicographic in the canonical element order
    auto order = all_elements(LatticeCtx::subspace(2, 2));
    auto index = [&](const FamilyTuple& t) {
        std::vector<std::ptrdiff_t> idx;
        for (const auto& e : t.elems) idx.push_back(std::find(order.begin(), order.end(), e) - order.begin());
        return idx;
    };
    for (std::size_t i = 1; i < l22.size(); ++i) EXPECT_LT(index(l22[i - 1]), index(l22[i]));
}

TEST(EnumerateAll, BooleanMatchesAssignmentOracle) {
    for (unsigned n = 1; n <= 5; ++n)
        for (unsigned r = 1; r <= 3; ++r) {
            auto ctx = LatticeCtx::boolean(n);
            std::set<std::vector<std::uint32_t>> lib;
            for (const auto& t : enumerate_all(ctx, Mode::decomposition, r)) {
                std::vector<std::uint32_t> bits;
                for (const auto& e : t.elems) bits.push_back(std::get<BoolSet>(e).bits);
                lib.insert(bits);
            }
            auto ref = oracle::boolean_decompositions(n, r);
            EXPECT_EQ(lib, std::set<std::vector<std::uint32_t>>(ref.begin(), ref.end()));
        }
}

TEST(EnumerateAll, StrataMatchCoefficients) {
    std::vector<LatticeCtx> contexts{LatticeCtx::boolean(4), LatticeCtx::subspace(2, 3), LatticeCtx::subspace(3, 2),
                                     LatticeCtx::divisor(72), LatticeCtx::divisor(30)};
    for (const auto& ctx : contexts)
        for (Mode mode : {Mode::decomposition, Mode::multichain})
            for (unsigned r = 1; r <= 3; ++r) {
                auto f = family_of_all(ctx, mode, r);
                EXPECT_EQ(BigInt(static_cast<unsigned long>(f.size())), count_all(ctx, mode, r));
                const unsigned n = ctx.top_rank();
                for (const auto& [type, tuples] : stratify(f)) {
                    const Composition full = mode == Mode::multichain ? with_final_part(ctx, type) : type;
                    BigInt expect;
                    switch (ctx.kind()) {
                    case LatticeKind::boolean: expect = multinomial(n, full); break;
                    case LatticeKind::subspace:
                        expect = mode == Mode::decomposition ? q_decomposition_count(n, full, ctx.q())
                                                             : q_multinomial(n, full, ctx.q());
                        break;
                    case LatticeKind::divisor: expect = oracle::ordered_factorizations(ctx.n(), full.parts); break;
                    }
                    EXPECT_EQ(BigInt(static_cast<unsigned long>(tuples.size())), expect)
                        << describe(ctx) << " " << to_string(mode) << " " << to_string(type);
                }
            }
}

TEST(EnumerateAll, TooLarge) {
    EXPECT_THROW(enumerate_all(LatticeCtx::boolean(20), Mode::decomposition, 3), Error);
}

TEST(Phi, Examples) {
    auto b4 = LatticeCtx::boolean(4);
    EXPECT_EQ(phi(b4, subsets(b4, {{1}, {3}, {2, 4}})), subsets(b4, {{1}, {1, 3}}));
    EXPECT_EQ(phi(b4, subsets(b4, {{2, 3}, {1}, {4}})), subsets(b4, {{2, 3}, {1, 2, 3}}));
    EXPECT_EQ(phi(b4, subsets(b4, {{1, 2, 3, 4}, {}, {}})), subsets(b4, {{1, 2, 3, 4}, {1, 2, 3, 4}}));
    auto l = LatticeCtx::subspace(2, 2);
    FamilyTuple sub{{top(l), bottom(l)}};
    EXPECT_THROW(phi(l, sub), Error);
    EXPECT_THROW(phi(Family(b4, Mode::multichain, 2)), Error);
}

TEST(Phi, RoundTripExhaustive) {
    std::vector<LatticeCtx> contexts;
    for (unsigned n = 1; n <= 4; ++n) contexts.push_back(LatticeCtx::boolean(n));
    for (std::uint64_t n = 1; n <= 360; ++n) contexts.push_back(LatticeCtx::divisor(n));
    for (const auto& ctx : contexts)
        for (unsigned r = 2; r <= 3; ++r) {
            std::set<FamilyTuple> images;
            for (const auto& t : enumerate_all(ctx, Mode::decomposition, r)) {
                auto c = phi(ctx, t);
                ASSERT_TRUE(is_valid_tuple(ctx, Mode::multichain, c.elems));
                ASSERT_EQ(phi_inverse(ctx, c), t);
                images.insert(c);
            }
            // onto all multichains of length r - 1
            EXPECT_EQ(images.size(), enumerate_all(ctx, Mode::multichain, r - 1).size()) << describe(ctx);
        }
}

TEST(Phi, CounterexampleLosesAntichain) {
    auto b4 = LatticeCtx::boolean(4);
    Family d(b4, Mode::decomposition, 3);
    d.insert(subsets(b4, {{1}, {3}, {2, 4}}));
    d.insert(subsets(b4, {{2, 3}, {1}, {4}}));
    EXPECT_TRUE(is_t_chain_free(b4, project(d, 1), 1));
    auto image = phi(d);
    EXPECT_EQ(project(image, 1), (std::set<LatticeElem>{make_subset(b4, {1, 3}), make_subset(b4, {1, 2, 3})}));
    EXPECT_FALSE(is_t_chain_free(b4, project(image, 1), 1));
}
