#pragma once

// Chain structure of finite element sets: height, the t-chain-free test and
// the Mirsky partition into antichains.

#include <algorithm>
#include <numeric>
#include <set>
#include <vector>

#include "lym/error.hpp"
#include "lym/lattice.hpp"

namespace lym {

struct ChainReport {
    /// Largest number of pairwise comparable elements.
    unsigned height = 0;
    /// One longest chain, strictly increasing.
    std::vector<LatticeElem> witness;
};

namespace detail {

// Distinct elements sorted by rank (then canonically), so that every strict
// predecessor of an element precedes it.
inline std::vector<LatticeElem> rank_sorted(const LatticeCtx& ctx, const std::vector<LatticeElem>& elems) {
    std::set<LatticeElem> unique(elems.begin(), elems.end());
    std::vector<std::pair<unsigned, LatticeElem>> keyed;
    for (const auto& e : unique) {
        validate(ctx, e);
        keyed.emplace_back(rank(ctx, e), e);
    }
    std::stable_sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<LatticeElem> out;
    for (auto& [r, e] : keyed) out.push_back(std::move(e));
    return out;
}

struct ChainLevels {
    std::vector<LatticeElem> sorted;
    std::vector<unsigned> level; // longest chain ending at sorted[i]
    std::vector<int> parent;
};

inline ChainLevels chain_levels(const LatticeCtx& ctx, const std::vector<LatticeElem>& elems) {
    ChainLevels out;
    out.sorted = rank_sorted(ctx, elems);
    const std::size_t m = out.sorted.size();
    out.level.assign(m, 1);
    out.parent.assign(m, -1);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (out.level[j] + 1 > out.level[i] && leq(ctx, out.sorted[j], out.sorted[i])) {
                out.level[i] = out.level[j] + 1;
                out.parent[i] = static_cast<int>(j);
            }
    return out;
}

} // namespace detail

/// Longest-path DP over the comparability relation in rank order; O(m^2)
/// comparisons.
inline ChainReport longest_chain(const LatticeCtx& ctx, const std::vector<LatticeElem>& elems) {
    auto lv = detail::chain_levels(ctx, elems);
    ChainReport report;
    if (lv.sorted.empty()) return report;
    const auto best = static_cast<std::size_t>(std::max_element(lv.level.begin(), lv.level.end()) - lv.level.begin());
    report.height = lv.level[best];
    for (int i = static_cast<int>(best); i >= 0; i = lv.parent[i]) report.witness.push_back(lv.sorted[i]);
    std::reverse(report.witness.begin(), report.witness.end());
    return report;
}

inline ChainReport longest_chain(const LatticeCtx& ctx, const std::set<LatticeElem>& elems) {
    return longest_chain(ctx, std::vector<LatticeElem>(elems.begin(), elems.end()));
}

/// No chain of length t, i.e. no t+1 pairwise comparable elements.
inline bool is_t_chain_free(const LatticeCtx& ctx, const std::vector<LatticeElem>& elems, unsigned t) {
    if (t < 1) fail(ErrorKind::InvalidArgument, "t must be positive");
    if (elems.size() <= t) return true;
    return longest_chain(ctx, elems).height <= t;
}

inline bool is_t_chain_free(const LatticeCtx& ctx, const std::set<LatticeElem>& elems, unsigned t) {
    return is_t_chain_free(ctx, std::vector<LatticeElem>(elems.begin(), elems.end()), t);
}

/// Groups elements by the length of the longest chain ending at them; the
/// block count equals the height and every block is an antichain.
inline std::vector<std::vector<LatticeElem>> mirsky_decomposition(const LatticeCtx& ctx,
                                                                   const std::vector<LatticeElem>& elems) {
    auto lv = detail::chain_levels(ctx, elems);
    const unsigned height = lv.level.empty() ? 0 : *std::max_element(lv.level.begin(), lv.level.end());
    std::vector<std::vector<LatticeElem>> blocks(height);
    for (std::size_t i = 0; i < lv.sorted.size(); ++i) blocks[lv.level[i] - 1].push_back(lv.sorted[i]);
    return blocks;
}

} // namespace lym
