#pragma once

// Exact maximum families of r-decompositions whose k-th projections are
// t_k-chain free.
//
// Feasibility depends only on the projection sets A_1..A_r, and the full
// preimage of feasible projections is feasible, so the optimum is
//   max over t_k-chain-free A_k of #{decompositions with D_k in A_k for all k}.
// Components are reordered by ascending t (the count is symmetric under a
// simultaneous permutation of components and parameters). All but the last
// are fixed by branch and bound over elements in rank order; the last is
// solved exactly as a maximum-weight t-family (union of t antichains) via the
// min-cost-flow form of the Greene-Kleitman duality. The same oracle applied
// to optimistic sets bounds every node.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <deque>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <set>
#include <thread>
#include <vector>

#include "lym/chains.hpp"
#include "lym/coefficients.hpp"
#include "lym/error.hpp"
#include "lym/family.hpp"
#include "lym/inequality.hpp"
#include "lym/lattice.hpp"

namespace lym {

using Membership = std::vector<char>;

/// Elements of a lattice by index (rank-sorted, canonical) with the strict
/// order precomputed.
class IndexedPoset {
public:
    explicit IndexedPoset(const LatticeCtx& ctx) : ctx_(ctx), elems_(all_elements(ctx)) {
        const std::size_t m = elems_.size();
        ranks_.resize(m);
        for (std::size_t i = 0; i < m; ++i) {
            ranks_[i] = rank(ctx, elems_[i]);
            index_.emplace(elems_[i], i);
        }
        below_.assign(m, {});
        less_.assign(m * m, 0);
        for (std::size_t j = 0; j < m; ++j)
            for (std::size_t i = 0; i < j; ++i)
                if (ranks_[i] < ranks_[j] && leq(ctx, elems_[i], elems_[j])) {
                    less_[i * m + j] = 1;
                    below_[j].push_back(static_cast<unsigned>(i));
                }
    }

    const LatticeCtx& ctx() const noexcept { return ctx_; }
    std::size_t size() const noexcept { return elems_.size(); }
    const LatticeElem& elem(std::size_t i) const { return elems_[i]; }
    const std::vector<LatticeElem>& elems() const noexcept { return elems_; }
    unsigned rank_of(std::size_t i) const { return ranks_[i]; }
    bool less(std::size_t i, std::size_t j) const { return less_[i * elems_.size() + j] != 0; }
    /// Strict predecessors, ascending index.
    const std::vector<unsigned>& below(std::size_t j) const { return below_[j]; }
    std::size_t index_of(const LatticeElem& e) const {
        auto it = index_.find(e);
        if (it == index_.end()) fail(ErrorKind::ContextMismatch, "element not in " + describe(ctx_));
        return it->second;
    }

    /// Longest chain inside a member set.
    unsigned height(const Membership& in) const {
        std::vector<unsigned> level(size(), 0);
        unsigned best = 0;
        for (std::size_t j = 0; j < size(); ++j) {
            if (!in[j]) continue;
            unsigned lv = 1;
            for (unsigned i : below_[j])
                if (in[i]) lv = std::max(lv, level[i] + 1);
            level[j] = lv;
            best = std::max(best, lv);
        }
        return best;
    }

private:
    LatticeCtx ctx_;
    std::vector<LatticeElem> elems_;
    std::vector<unsigned> ranks_;
    std::map<LatticeElem, std::size_t> index_;
    std::vector<std::vector<unsigned>> below_;
    std::vector<char> less_;
};

// ---------------------------------------------------------------------------
// maximum-weight t-families

namespace detail {

struct FlowEdge {
    int to;
    std::int64_t cap;
    std::int64_t cost;
};

class MinCostFlow {
public:
    explicit MinCostFlow(int nodes) : adj_(static_cast<std::size_t>(nodes)) {}

    void add_edge(int from, int to, std::int64_t cap, std::int64_t cost) {
        adj_[from].push_back(static_cast<int>(edges_.size()));
        edges_.push_back({to, cap, cost});
        adj_[to].push_back(static_cast<int>(edges_.size()));
        edges_.push_back({from, 0, -cost});
    }

    /// Augments along shortest paths while they have negative cost; returns
    /// the (non-positive) total cost. The network is acyclic to begin with,
    /// so there are no negative cycles.
    std::int64_t min_cost_any_flow(int s, int t) {
        const std::size_t n = adj_.size();
        constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;
        std::int64_t total = 0;
        std::vector<std::int64_t> dist(n);
        std::vector<int> via(n);
        std::vector<char> queued(n);
        std::deque<int> queue;
        while (true) {
            std::fill(dist.begin(), dist.end(), kInf);
            std::fill(via.begin(), via.end(), -1);
            dist[s] = 0;
            queue.assign(1, s);
            std::fill(queued.begin(), queued.end(), 0);
            queued[s] = 1;
            while (!queue.empty()) {
                int u = queue.front();
                queue.pop_front();
                queued[u] = 0;
                for (int id : adj_[u]) {
                    const FlowEdge& e = edges_[id];
                    if (e.cap > 0 && dist[u] + e.cost < dist[e.to]) {
                        dist[e.to] = dist[u] + e.cost;
                        via[e.to] = id;
                        if (!queued[e.to]) {
                            queued[e.to] = 1;
                            queue.push_back(e.to);
                        }
                    }
                }
            }
            if (dist[t] >= 0) break;
            std::int64_t push = kInf;
            for (int v = t; v != s; v = edges_[via[v] ^ 1].to) push = std::min(push, edges_[via[v]].cap);
            for (int v = t; v != s; v = edges_[via[v] ^ 1].to) {
                edges_[via[v]].cap -= push;
                edges_[via[v] ^ 1].cap += push;
            }
            total += push * dist[t];
        }
        return total;
    }

private:
    std::vector<std::vector<int>> adj_;
    std::vector<FlowEdge> edges_;
};

} // namespace detail

/// Largest total weight of a subset with no t+1 pairwise comparable
/// elements. Weighted Greene-Kleitman: the optimum equals
///   sum(w) + min over chain covers of (t * #chains - covered weight),
/// which is a min-cost flow where each chain costs t and each element
/// refunds 1 per covering unit up to its weight.
inline std::uint64_t max_weight_t_family(const IndexedPoset& poset, const std::vector<std::uint64_t>& weight, unsigned t) {
    if (t < 1) fail(ErrorKind::InvalidArgument, "t must be positive");
    std::vector<int> id;
    std::uint64_t total = 0;
    for (std::size_t i = 0; i < poset.size(); ++i)
        if (weight[i] > 0) {
            id.push_back(static_cast<int>(i));
            total += weight[i];
        }
    if (id.empty()) return 0;
    {
        Membership in(poset.size(), 0);
        for (int i : id) in[i] = 1;
        if (poset.height(in) <= t) return total;
    }
    const int k = static_cast<int>(id.size());
    const std::int64_t big = static_cast<std::int64_t>(total) + 1;
    detail::MinCostFlow flow(2 * k + 2);
    const int s = 2 * k, sink = 2 * k + 1;
    for (int a = 0; a < k; ++a) {
        flow.add_edge(s, 2 * a, big, static_cast<std::int64_t>(t));
        flow.add_edge(2 * a, 2 * a + 1, static_cast<std::int64_t>(weight[id[a]]), -1);
        flow.add_edge(2 * a, 2 * a + 1, big, 0);
        flow.add_edge(2 * a + 1, sink, big, 0);
        for (int b = 0; b < k; ++b)
            if (poset.less(static_cast<std::size_t>(id[a]), static_cast<std::size_t>(id[b])))
                flow.add_edge(2 * a + 1, 2 * b, big, 0);
    }
    const std::int64_t cost = flow.min_cost_any_flow(s, sink);
    return static_cast<std::uint64_t>(static_cast<std::int64_t>(total) + cost);
}

/// A t-family attaining `target` (the value from max_weight_t_family). Depth
/// first over positive-weight elements in rank order.
inline Membership t_family_attaining(const IndexedPoset& poset, const std::vector<std::uint64_t>& weight, unsigned t,
                                     std::uint64_t target) {
    std::vector<unsigned> order;
    for (std::size_t i = 0; i < poset.size(); ++i)
        if (weight[i] > 0) order.push_back(static_cast<unsigned>(i));
    std::vector<std::uint64_t> suffix(order.size() + 1, 0);
    for (std::size_t i = order.size(); i-- > 0;) suffix[i] = suffix[i + 1] + weight[order[i]];

    Membership in(poset.size(), 0);
    std::vector<unsigned> level(poset.size(), 0);
    std::function<bool(std::size_t, std::uint64_t)> dfs = [&](std::size_t pos, std::uint64_t acc) -> bool {
        if (acc >= target) return true;
        if (pos == order.size() || acc + suffix[pos] < target) return false;
        const unsigned e = order[pos];
        unsigned lv = 1;
        for (unsigned b : poset.below(e))
            if (in[b]) lv = std::max(lv, level[b] + 1);
        if (lv <= t) {
            in[e] = 1;
            level[e] = lv;
            if (dfs(pos + 1, acc + weight[e])) return true;
            in[e] = 0;
        }
        return dfs(pos + 1, acc);
    };
    if (!dfs(0, 0)) fail(ErrorKind::InvalidArgument, "no t-family attains the requested weight");
    return in;
}

// ---------------------------------------------------------------------------
// counting decompositions with restricted components

/// Given membership sets for r-1 components, weight[e] is the number of
/// r-decompositions whose remaining component is e and whose other
/// components lie in their sets. The count is symmetric in the components,
/// so any one of them can play the remaining role.
class DecompositionCounter {
public:
    virtual ~DecompositionCounter() = default;
    virtual void weights(const std::vector<const Membership*>& sets, std::vector<std::uint64_t>& out) const = 0;
};

/// Boolean lattice: f_k(S) = sum over B in A_k, B subset of S, of f_{k-1}(S \ B).
class BooleanCounter final : public DecompositionCounter {
public:
    explicit BooleanCounter(const IndexedPoset& poset) : poset_(poset) {
        n_ = static_cast<unsigned>(poset.ctx().n());
        index_of_bits_.assign(std::size_t{1} << n_, 0);
        for (std::size_t i = 0; i < poset.size(); ++i) index_of_bits_[std::get<BoolSet>(poset.elem(i)).bits] = static_cast<unsigned>(i);
    }

    void weights(const std::vector<const Membership*>& sets, std::vector<std::uint64_t>& out) const override {
        const std::uint32_t full = (1u << n_) - 1u;
        std::vector<std::uint64_t> f(std::size_t{1} << n_, 0), g(f.size());
        f[0] = 1;
        for (const Membership* in : sets) {
            std::fill(g.begin(), g.end(), 0);
            for (std::uint32_t s = 0; s <= full; ++s) {
                // every submask b of s, including 0 and s
                for (std::uint32_t b = s;; b = (b - 1) & s) {
                    if ((*in)[index_of_bits_[b]] && f[s & ~b]) g[s] += f[s & ~b];
                    if (b == 0) break;
                }
            }
            std::swap(f, g);
        }
        out.assign(poset_.size(), 0);
        for (std::size_t i = 0; i < poset_.size(); ++i) out[i] = f[full & ~std::get<BoolSet>(poset_.elem(i)).bits];
    }

private:
    const IndexedPoset& poset_;
    unsigned n_ = 0;
    std::vector<unsigned> index_of_bits_;
};

/// Divisor lattice: f_k(d) = sum over b in A_k with b | d of f_{k-1}(d / b).
class DivisorCounter final : public DecompositionCounter {
public:
    explicit DivisorCounter(const IndexedPoset& poset) : poset_(poset) {
        const auto& ctx = poset.ctx();
        const std::size_t m = poset.size();
        std::map<std::uint64_t, unsigned> by_value;
        values_.resize(m);
        for (std::size_t i = 0; i < m; ++i) {
            values_[i] = divisor_value(ctx, std::get<DivisorElem>(poset.elem(i)));
            by_value.emplace(values_[i], static_cast<unsigned>(i));
        }
        splits_.resize(m);
        for (std::size_t d = 0; d < m; ++d)
            for (std::size_t b = 0; b < m; ++b)
                if (values_[d] % values_[b] == 0) splits_[d].push_back({static_cast<unsigned>(b), by_value.at(values_[d] / values_[b])});
        for (std::size_t i = 0; i < m; ++i) {
            complement_.push_back(by_value.at(ctx.n() / values_[i]));
            if (values_[i] == 1) unit_ = static_cast<unsigned>(i);
        }
    }

    void weights(const std::vector<const Membership*>& sets, std::vector<std::uint64_t>& out) const override {
        const std::size_t m = poset_.size();
        std::vector<std::uint64_t> f(m, 0), g(m);
        f[unit_] = 1;
        for (const Membership* in : sets) {
            std::fill(g.begin(), g.end(), 0);
            for (std::size_t d = 0; d < m; ++d)
                for (auto [b, quotient] : splits_[d])
                    if ((*in)[b]) g[d] += f[quotient];
            std::swap(f, g);
        }
        out.assign(m, 0);
        for (std::size_t i = 0; i < m; ++i) out[i] = f[complement_[i]];
    }

private:
    const IndexedPoset& poset_;
    std::vector<std::uint64_t> values_;
    std::vector<std::vector<std::pair<unsigned, unsigned>>> splits_;
    std::vector<unsigned> complement_;
    unsigned unit_ = 0;
};

/// Any lattice: filter the full list of decompositions.
class TupleCounter final : public DecompositionCounter {
public:
    TupleCounter(const IndexedPoset& poset, unsigned r) : poset_(poset) {
        for (const auto& t : enumerate_all(poset.ctx(), Mode::decomposition, r)) {
            std::vector<unsigned> idx;
            for (const auto& e : t.elems) idx.push_back(static_cast<unsigned>(poset.index_of(e)));
            tuples_.push_back(std::move(idx));
        }
    }

    void weights(const std::vector<const Membership*>& sets, std::vector<std::uint64_t>& out) const override {
        out.assign(poset_.size(), 0);
        for (const auto& t : tuples_) {
            bool ok = true;
            for (std::size_t k = 0; k < sets.size() && ok; ++k) ok = (*sets[k])[t[k]] != 0;
            if (ok) ++out[t.back()];
        }
    }

private:
    const IndexedPoset& poset_;
    std::vector<std::vector<unsigned>> tuples_;
};

inline std::unique_ptr<DecompositionCounter> make_counter(const IndexedPoset& poset, unsigned r) {
    switch (poset.ctx().kind()) {
    case LatticeKind::boolean: return std::make_unique<BooleanCounter>(poset);
    case LatticeKind::divisor: return std::make_unique<DivisorCounter>(poset);
    case LatticeKind::subspace: return std::make_unique<TupleCounter>(poset, r);
    }
    return nullptr;
}

// ---------------------------------------------------------------------------
// search

struct SearchOptions {
    double time_budget_secs = 300.0;
    unsigned workers = 1;
};

/// Default budget, overridden by LYM_TIME_BUDGET_SECS when set.
inline double default_time_budget() {
    if (const char* env = std::getenv("LYM_TIME_BUDGET_SECS")) {
        char* end = nullptr;
        const double v = std::strtod(env, &end);
        if (end != env && v > 0) return v;
    }
    return 300.0;
}

struct SearchResult {
    std::uint64_t max_size = 0;
    Family witness;
    BigInt theorem_bound;
    std::uint64_t nodes_explored = 0;
    bool proved_optimal = false;
};

namespace detail {

class FamilySearch {
public:
    FamilySearch(const LatticeCtx& ctx, unsigned r, const ChainParams& params, const SearchOptions& opts)
        : poset_(ctx), r_(r), params_(params), opts_(opts) {
        m_ = poset_.size();
        counter_ = make_counter(poset_, r);
        // ascending t; the component with the largest t is solved by flow
        order_.resize(r);
        std::iota(order_.begin(), order_.end(), 0u);
        std::stable_sort(order_.begin(), order_.end(), [&](unsigned a, unsigned b) { return params.t[a] < params.t[b]; });
        for (unsigned k : order_) t_.push_back(params.t[k]);
        Membership all(m_, 1);
        lattice_height_ = poset_.height(all);
        theorem_bound_ = bound_sum_largest(coefficient_multiset(ctx, Mode::decomposition, r), sigma_tau(params).sigma).sum;
    }

    const IndexedPoset& poset() const { return poset_; }
    const BigInt& theorem_bound() const { return theorem_bound_; }

    struct Node {
        std::vector<Membership> sets; // 1 = in, 0 = out, 2 = undecided; components 0..r-2 in search order
        std::vector<std::vector<unsigned>> level;
        unsigned comp = 0;
        std::size_t pos = 0;
    };

    Node root() const {
        Node node;
        node.sets.assign(r_ - 1, Membership(m_, 2));
        node.level.assign(r_ - 1, std::vector<unsigned>(m_, 0));
        // unconstrained components take everything
        for (unsigned k = 0; k + 1 < r_; ++k)
            if (t_[k] >= lattice_height_) std::fill(node.sets[k].begin(), node.sets[k].end(), 1);
        node.comp = 0;
        node.pos = 0;
        return node;
    }

    /// Seeds the shared incumbent and runs the search.
    void run(std::uint64_t& best_value, std::vector<Membership>& best_sets, std::uint64_t& nodes, bool& complete) {
        start_ = std::chrono::steady_clock::now();
        best_.store(0);
        const BigInt cap = theorem_bound_;
        cap_ = cap.fits_ulong_p() ? cap.get_ui() : std::numeric_limits<std::uint64_t>::max();
        aborted_.store(false);
        nodes_.store(0);

        if (r_ == 1) {
            // only (top)
            best_sets_.clear();
            best_.store(1);
        } else if (opts_.workers <= 1) {
            Node node = root();
            dfs(node);
        } else {
            run_parallel();
        }
        best_value = best_.load();
        best_sets = best_sets_;
        nodes = nodes_.load();
        complete = !aborted_.load();
    }

    /// Last-component weights for fully decided sets.
    std::vector<std::uint64_t> last_weights(const std::vector<Membership>& sets) const {
        std::vector<const Membership*> ptrs;
        for (const auto& s : sets) ptrs.push_back(&s);
        std::vector<std::uint64_t> w;
        counter_->weights(ptrs, w);
        return w;
    }

    const std::vector<unsigned>& order() const { return order_; }
    unsigned last_t() const { return t_.back(); }

private:
    // optimistic membership for component k at this node
    Membership optimistic(const Node& node, unsigned k) const {
        Membership out(m_, 0);
        const Membership& s = node.sets[k];
        for (std::size_t i = 0; i < m_; ++i) {
            if (s[i] == 1) out[i] = 1;
            else if (s[i] == 2) out[i] = admissible(node, k, i) ? 1 : 0;
        }
        return out;
    }

    unsigned level_if_added(const Node& node, unsigned k, std::size_t e) const {
        unsigned lv = 1;
        for (unsigned b : poset_.below(e))
            if (node.sets[k][b] == 1) lv = std::max(lv, node.level[k][b] + 1);
        return lv;
    }

    bool admissible(const Node& node, unsigned k, std::size_t e) const { return level_if_added(node, k, e) <= t_[k]; }

    // checks the clock on the first node and every 256th after
    bool out_of_time(std::uint64_t visited) {
        if ((visited & 255u) != 0) return aborted_.load(std::memory_order_relaxed);
        const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
        if (elapsed > opts_.time_budget_secs) aborted_.store(true);
        return aborted_.load();
    }

    void offer(std::uint64_t value, const std::vector<Membership>& sets) {
        std::lock_guard lock(best_mutex_);
        if (value > best_.load()) {
            best_.store(value);
            best_sets_ = sets;
        }
    }

    bool done() const { return aborted_.load(std::memory_order_relaxed) || best_.load(std::memory_order_relaxed) >= cap_; }

    void dfs(Node& node) {
        if (done()) return;
        if (out_of_time(nodes_.fetch_add(1, std::memory_order_relaxed))) return;

        // optimistic sets for all branching components
        std::vector<Membership> opt(r_ - 1);
        for (unsigned k = 0; k + 1 < r_; ++k) opt[k] = optimistic(node, k);
        std::vector<const Membership*> ptrs;
        for (const auto& s : opt) ptrs.push_back(&s);
        std::vector<std::uint64_t> w;
        counter_->weights(ptrs, w);
        const std::uint64_t bound = max_weight_t_family(poset_, w, t_.back());
        if (bound <= best_.load(std::memory_order_relaxed)) return;

        // advance to the next undecided position
        while (node.comp + 1 < r_ && node.pos == m_) {
            ++node.comp;
            node.pos = 0;
        }
        if (node.comp + 1 == r_) {
            // every branching component decided: the bound is exact
            std::vector<Membership> sets(r_ - 1);
            for (unsigned k = 0; k + 1 < r_; ++k) sets[k] = opt[k];
            offer(bound, sets);
            return;
        }

        const unsigned k = node.comp;
        // weights of component k against the other optimistic sets
        std::vector<const Membership*> others;
        Membership all(m_, 1);
        for (unsigned j = 0; j + 1 < r_; ++j)
            if (j != k) others.push_back(&opt[j]);
        others.push_back(&all);
        std::vector<std::uint64_t> useful;
        counter_->weights(others, useful);

        // decide undecided positions with no choice in a row
        std::vector<std::pair<std::size_t, char>> forced;
        std::size_t e = node.pos;
        for (; e < m_; ++e) {
            char& state = node.sets[k][e];
            if (state != 2) continue;
            if (useful[e] == 0 || !admissible(node, k, e)) {
                state = 0;
                forced.emplace_back(e, 2);
                continue;
            }
            break;
        }
        const std::size_t saved_pos = node.pos;
        if (e == m_) {
            node.pos = m_;
            dfs(node);
        } else {
            node.pos = e + 1;
            node.sets[k][e] = 1;
            node.level[k][e] = level_if_added(node, k, e);
            dfs(node);
            node.sets[k][e] = 0;
            node.level[k][e] = 0;
            if (!done()) dfs(node);
            node.sets[k][e] = 2;
        }
        // dfs may have advanced comp; restore
        node.comp = k;
        node.pos = saved_pos;
        for (auto [i, prev] : forced) node.sets[k][i] = prev;
    }

    void run_parallel() {
        // breadth-first split into independent work items, then drain them
        std::vector<Node> items;
        std::deque<Node> frontier{root()};
        const std::size_t want = static_cast<std::size_t>(opts_.workers) * 8;
        while (!frontier.empty() && frontier.size() + items.size() < want) {
            Node node = std::move(frontier.front());
            frontier.pop_front();
            while (node.comp + 1 < r_ && node.pos == m_) {
                ++node.comp;
                node.pos = 0;
            }
            if (node.comp + 1 == r_) {
                items.push_back(std::move(node));
                continue;
            }
            const unsigned k = node.comp;
            std::size_t e = node.pos;
            while (e < m_ && (node.sets[k][e] != 2 || !admissible(node, k, e))) {
                if (node.sets[k][e] == 2) node.sets[k][e] = 0;
                ++e;
            }
            if (e == m_) {
                node.pos = m_;
                frontier.push_back(std::move(node));
                continue;
            }
            Node in = node;
            in.pos = e + 1;
            in.sets[k][e] = 1;
            in.level[k][e] = level_if_added(in, k, e);
            node.pos = e + 1;
            node.sets[k][e] = 0;
            frontier.push_back(std::move(in));
            frontier.push_back(std::move(node));
        }
        for (auto& n : frontier) items.push_back(std::move(n));

        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            for (std::size_t i = next.fetch_add(1); i < items.size(); i = next.fetch_add(1)) {
                Node node = items[i];
                dfs(node);
            }
        };
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < opts_.workers; ++w) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    IndexedPoset poset_;
    unsigned r_;
    ChainParams params_;
    SearchOptions opts_;
    std::size_t m_ = 0;
    std::unique_ptr<DecompositionCounter> counter_;
    std::vector<unsigned> order_;
    std::vector<unsigned> t_;
    unsigned lattice_height_ = 0;
    BigInt theorem_bound_;
    std::uint64_t cap_ = 0;

    std::chrono::steady_clock::time_point start_;
    std::atomic<std::uint64_t> best_{0};
    std::atomic<std::uint64_t> nodes_{0};
    std::atomic<bool> aborted_{false};
    std::mutex best_mutex_;
    std::vector<Membership> best_sets_;
};

} // namespace detail

/// All decompositions whose k-th component lies in sets[k] for every k.
inline Family product_family(const LatticeCtx& ctx, const std::vector<std::set<LatticeElem>>& sets) {
    const unsigned r = static_cast<unsigned>(sets.size());
    Family out(ctx, Mode::decomposition, r);
    for (auto& t : enumerate_all(ctx, Mode::decomposition, r)) {
        bool ok = true;
        for (unsigned k = 0; k < r && ok; ++k) ok = sets[k].count(t.elems[k]) != 0;
        if (ok) out.insert_unchecked(std::move(t));
    }
    return out;
}

/// Exact maximum size of a family of r-decompositions with every D_k
/// t_k-chain free. On budget exhaustion, returns the best found with
/// proved_optimal = false.
inline SearchResult max_family(const LatticeCtx& ctx, unsigned r, const ChainParams& params, SearchOptions opts = {}) {
    params.validate();
    if (params.r() != r)
        fail(ErrorKind::ParamMismatch, "got " + std::to_string(params.r()) + " chain parameters for r = " + std::to_string(r));
    if (r < 1) fail(ErrorKind::InvalidArgument, "r must be positive");
    if (count_all(ctx, Mode::decomposition, r) > kMaxEnumeration)
        fail(ErrorKind::TooLarge, "more than 2^24 decompositions in " + describe(ctx));

    detail::FamilySearch search(ctx, r, params, opts);
    std::uint64_t value = 0, nodes = 0;
    std::vector<Membership> sets;
    bool complete = false;
    search.run(value, sets, nodes, complete);

    // rebuild the witness: branching components from the search, the last
    // one from a t-family attaining the optimum
    const auto& poset = search.poset();
    std::vector<std::set<LatticeElem>> by_component(r);
    if (r == 1) {
        by_component[0].insert(top(ctx));
    } else if (value > 0) {
        const auto w = search.last_weights(sets);
        const Membership last = t_family_attaining(poset, w, search.last_t(), value);
        const auto& order = search.order();
        for (unsigned k = 0; k < r; ++k) {
            const Membership& in = k + 1 < r ? sets[k] : last;
            for (std::size_t i = 0; i < poset.size(); ++i)
                if (in[i] == 1) by_component[order[k]].insert(poset.elem(i));
        }
    }

    SearchResult result{0, Family(ctx, Mode::decomposition, r), search.theorem_bound(), nodes, complete};
    if (value > 0) result.witness = product_family(ctx, by_component);
    result.max_size = result.witness.size();
    if (result.max_size != value)
        fail(ErrorKind::InvalidArgument, "internal: witness size " + std::to_string(result.max_size) +
                                             " differs from search value " + std::to_string(value));
    return result;
}

/// All premises hold, and the size matches the claim when one is given.
inline bool verify_witness(const Family& family, const ChainParams& params,
                           std::optional<std::uint64_t> claimed_size = std::nullopt) {
    if (params.r() != family.r()) return false;
    for (unsigned k = 0; k < family.r(); ++k)
        if (!is_t_chain_free(family.ctx(), project(family, k), params.t[k])) return false;
    return !claimed_size || *claimed_size == family.size();
}

inline bool verify_witness(const SearchResult& result, const ChainParams& params) {
    return verify_witness(result.witness, params, result.max_size);
}

} // namespace lym
