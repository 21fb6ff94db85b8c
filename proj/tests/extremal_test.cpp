#include <random>

#include <gtest/gtest.h>

#include "fuzz.hpp"
#include "lym/extremal.hpp"
#include "lym/inequality.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace lym;

namespace {

std::vector<std::vector<std::uint32_t>> as_bits(const std::vector<FamilyTuple>& tuples) {
    std::vector<std::vector<std::uint32_t>> out;
    for (const auto& t : tuples) {
        std::vector<std::uint32_t> bits;
        for (const auto& e : t.elems) bits.push_back(std::get<BoolSet>(e).bits);
        out.push_back(std::move(bits));
    }
    return out;
}

} // namespace

TEST(MaxFamily, BooleanFourOneTwoTwo) {
    auto res = max_family(LatticeCtx::boolean(4), 3, ChainParams{1, 2, 2});
    EXPECT_EQ(res.max_size, 24u);
    EXPECT_EQ(res.theorem_bound, 24);
    EXPECT_TRUE(res.proved_optimal);
    EXPECT_TRUE(verify_witness(res, ChainParams{1, 2, 2}));
    EXPECT_EQ(assess(verify_theorem(res.witness, ChainParams{1, 2, 2})), Verdict::confirmed);
}

TEST(MaxFamily, BoundNotAttained) {
    for (unsigned big : {3u, 4u, 5u}) {
        auto res = max_family(LatticeCtx::boolean(4), 3, ChainParams{1, 3, big});
        EXPECT_EQ(res.max_size, 28u) << big;
        EXPECT_TRUE(res.proved_optimal);
        EXPECT_TRUE(verify_witness(res, ChainParams{1, 3, big}));
    }
    EXPECT_EQ(max_family(LatticeCtx::boolean(4), 3, ChainParams{1, 3, 3}).theorem_bound, 36);
}

TEST(MaxFamily, SmallCases) {
    auto two = max_family(LatticeCtx::boolean(2), 2, ChainParams{1, 1});
    EXPECT_EQ(two.max_size, 2u);
    EXPECT_EQ(two.theorem_bound, 2);
    EXPECT_EQ(max_family(LatticeCtx::boolean(4), 3, ChainParams{1, 1, 1}).max_size, 12u);
    EXPECT_EQ(max_family(LatticeCtx::boolean(3), 3, ChainParams{1, 1, 1}).max_size, 6u);
    // r = 1 admits only the top element
    EXPECT_EQ(max_family(LatticeCtx::boolean(3), 1, ChainParams{1}).max_size, 1u);
}

TEST(MaxFamily, Errors) {
    EXPECT_THROW(max_family(LatticeCtx::boolean(4), 3, ChainParams{1, 2}), Error);
    EXPECT_THROW(max_family(LatticeCtx::boolean(20), 3, ChainParams{1, 1, 1}), Error);
}

TEST(MaxFamily, MatchesExhaustiveOracle) {
    struct Case {
        unsigned n, r;
    };
    for (auto [n, r] : {Case{2, 2}, Case{3, 2}, Case{4, 2}, Case{2, 3}})
        for (unsigned t0 = 1; t0 <= 2; ++t0)
            for (unsigned t1 = 1; t1 <= 2; ++t1) {
                std::vector<unsigned> t{t0, t1};
                if (r == 3) t.push_back(1);
                auto ctx = LatticeCtx::boolean(n);
                auto res = max_family(ctx, r, ChainParams(t));
                auto tuples = as_bits(enumerate_all(ctx, Mode::decomposition, r));
                EXPECT_EQ(res.max_size, oracle::max_constrained_subset(tuples, t)) << n << " " << r;
                EXPECT_TRUE(res.proved_optimal);
                EXPECT_TRUE(verify_witness(res, ChainParams(t)));
            }
}

TEST(MaxFamily, OtherLattices) {
    for (auto ctx : {LatticeCtx::divisor(360), LatticeCtx::divisor(30), LatticeCtx::subspace(2, 3)})
        for (auto t : {std::vector<unsigned>{1, 1}, std::vector<unsigned>{1, 2}, std::vector<unsigned>{2, 2, 1}}) {
            const unsigned r = static_cast<unsigned>(t.size());
            auto res = max_family(ctx, r, ChainParams(t));
            EXPECT_TRUE(res.proved_optimal);
            EXPECT_TRUE(verify_witness(res, ChainParams(t)));
            EXPECT_LE(BigInt(static_cast<unsigned long>(res.max_size)), res.theorem_bound) << describe(ctx);
        }
}

TEST(MaxFamily, ParallelAgrees) {
    SearchOptions opts;
    opts.workers = 2;
    auto res = max_family(LatticeCtx::boolean(4), 3, ChainParams{1, 3, 3}, opts);
    EXPECT_EQ(res.max_size, 28u);
    EXPECT_TRUE(res.proved_optimal);
    EXPECT_TRUE(verify_witness(res, ChainParams{1, 3, 3}));
}

TEST(MaxFamily, BudgetExhaustion) {
    SearchOptions opts;
    opts.time_budget_secs = 1e-9;
    auto res = max_family(LatticeCtx::boolean(5), 3, ChainParams{1, 3, 3}, opts);
    EXPECT_FALSE(res.proved_optimal);
    EXPECT_TRUE(verify_witness(res, ChainParams{1, 3, 3}));
}

TEST(VerifyWitness, Examples) {
    auto f = support::remark24();
    EXPECT_TRUE(verify_witness(f, ChainParams{1, 2, 2}, 24));
    EXPECT_FALSE(verify_witness(f, ChainParams{1, 2, 2}, 23));
    EXPECT_FALSE(verify_witness(f, ChainParams{1, 1, 2}));
    EXPECT_TRUE(verify_witness(Family(f.ctx(), Mode::decomposition, 3), ChainParams{1, 1, 1}, 0));
}

TEST(ProductFamily, RemarkSets) {
    auto b4 = LatticeCtx::boolean(4);
    std::vector<std::set<LatticeElem>> sets(3);
    for (const auto& e : enumerate_rank(b4, 1)) sets[0].insert(e);
    for (unsigned k : {1u, 2u})
        for (unsigned rk : {1u, 2u})
            for (const auto& e : enumerate_rank(b4, rk)) sets[k].insert(e);
    EXPECT_EQ(product_family(b4, sets).size(), 24u);
}

TEST(MaxWeightTFamily, MatchesBruteForce) {
    std::mt19937_64 rng(51);
    auto ctx = LatticeCtx::boolean(3);
    IndexedPoset poset(ctx);
    const std::size_t m = poset.size();
    std::uniform_int_distribution<std::uint64_t> w(0, 6);
    for (int trial = 0; trial < 60; ++trial) {
        std::vector<std::uint64_t> weight(m);
        for (auto& x : weight) x = w(rng);
        for (unsigned t = 1; t <= 4; ++t) {
            std::uint64_t best = 0;
            for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
                std::set<std::uint32_t> members;
                std::uint64_t total = 0;
                for (std::size_t i = 0; i < m; ++i)
                    if (mask >> i & 1) {
                        members.insert(std::get<BoolSet>(poset.elem(i)).bits);
                        total += weight[i];
                    }
                if (oracle::height(members) <= t) best = std::max(best, total);
            }
            const auto got = max_weight_t_family(poset, weight, t);
            EXPECT_EQ(got, best);
            const Membership in = t_family_attaining(poset, weight, t, got);
            EXPECT_LE(poset.height(in), t);
            std::uint64_t total = 0;
            for (std::size_t i = 0; i < m; ++i)
                if (in[i]) total += weight[i];
            EXPECT_GE(total, got);
        }
    }
}

TEST(Counters, AgreeWithTupleFilter) {
    std::mt19937_64 rng(52);
    for (auto ctx : {LatticeCtx::boolean(4), LatticeCtx::divisor(360), LatticeCtx::divisor(64)}) {
        IndexedPoset poset(ctx);
        for (unsigned r = 2; r <= 3; ++r) {
            auto fast = make_counter(poset, r);
            TupleCounter slow(poset, r);
            for (int trial = 0; trial < 20; ++trial) {
                std::vector<Membership> sets;
                for (unsigned k = 0; k + 1 < r; ++k) sets.push_back(fuzz::random_chain_free(poset, 1 + trial % 3, rng));
                std::vector<const Membership*> ptrs;
                for (const auto& s : sets) ptrs.push_back(&s);
                std::vector<std::uint64_t> a, b;
                fast->weights(ptrs, a);
                slow.weights(ptrs, b);
                EXPECT_EQ(a, b) << describe(ctx);
            }
        }
    }
}
