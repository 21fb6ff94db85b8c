#pragma once

// Families of r-decompositions and r-multichains: validation, projections,
// strata by composition type, full enumeration and the map phi sending a
// decomposition to its chain of partial unions.

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "lym/coefficients.hpp"
#include "lym/error.hpp"
#include "lym/lattice.hpp"

namespace lym {

enum class Mode { decomposition, multichain };

constexpr std::string_view to_string(Mode m) noexcept {
    return m == Mode::decomposition ? "decomposition" : "multichain";
}

struct FamilyTuple {
    std::vector<LatticeElem> elems;
    friend auto operator<=>(const FamilyTuple&, const FamilyTuple&) = default;
};

/// Tuple validity for the mode: a decomposition of the top element, or a
/// weakly (strictly, if `strict`) increasing sequence.
inline bool is_valid_tuple(const LatticeCtx& ctx, Mode mode, const std::vector<LatticeElem>& elems, bool strict = false) {
    if (elems.empty()) return false;
    if (mode == Mode::decomposition) return is_decomposition(ctx, elems);
    for (const auto& e : elems) validate(ctx, e);
    for (std::size_t i = 1; i < elems.size(); ++i) {
        if (!leq(ctx, elems[i - 1], elems[i])) return false;
        if (strict && elems[i - 1] == elems[i]) return false;
    }
    return true;
}

/// A finite set of r-tuples over one lattice, all of one mode.
class Family {
public:
    Family(LatticeCtx ctx, Mode mode, unsigned r, bool strict = false)
        : ctx_(std::move(ctx)), mode_(mode), r_(r), strict_(strict) {
        if (r_ < 1) fail(ErrorKind::InvalidArgument, "tuple length r must be positive");
    }

    const LatticeCtx& ctx() const noexcept { return ctx_; }
    Mode mode() const noexcept { return mode_; }
    unsigned r() const noexcept { return r_; }
    bool strict() const noexcept { return strict_; }
    const std::set<FamilyTuple>& tuples() const noexcept { return tuples_; }
    std::size_t size() const noexcept { return tuples_.size(); }
    bool empty() const noexcept { return tuples_.empty(); }

    /// Returns false if the tuple was already present.
    bool insert(FamilyTuple t) {
        if (t.elems.size() != r_)
            fail(ErrorKind::ShapeMismatch,
                 "tuple has " + std::to_string(t.elems.size()) + " components, family has r = " + std::to_string(r_));
        if (!is_valid_tuple(ctx_, mode_, t.elems, strict_))
            fail(ErrorKind::InvalidArgument, std::string("tuple is not a valid ") + std::string(to_string(mode_)));
        return tuples_.insert(std::move(t)).second;
    }

    /// Skips validation; for callers that produce valid tuples by construction.
    void insert_unchecked(FamilyTuple t) { tuples_.insert(std::move(t)); }

private:
    LatticeCtx ctx_;
    Mode mode_;
    unsigned r_;
    bool strict_;
    std::set<FamilyTuple> tuples_;
};

/// Set of component-k elements (k is 0-based).
inline std::set<LatticeElem> project(const Family& family, unsigned k) {
    if (k >= family.r())
        fail(ErrorKind::IndexOutOfRange,
             "component " + std::to_string(k) + " of a family with r = " + std::to_string(family.r()));
    std::set<LatticeElem> out;
    for (const auto& t : family.tuples()) out.insert(t.elems[k]);
    return out;
}

/// Composition type of a tuple: ranks of the parts for decompositions,
/// consecutive rank differences for multichains (r parts; the implicit
/// final part is added by `with_final_part`).
inline Composition tuple_type(const LatticeCtx& ctx, Mode mode, const FamilyTuple& t) {
    Composition c;
    unsigned prev = 0;
    for (const auto& e : t.elems) {
        const unsigned rk = rank(ctx, e);
        if (mode == Mode::decomposition) {
            c.parts.push_back(rk);
        } else {
            c.parts.push_back(rk - prev);
            prev = rk;
        }
    }
    return c;
}

/// Appends a_{r+1} = top rank - (a_1 + ... + a_r).
inline Composition with_final_part(const LatticeCtx& ctx, Composition c) {
    const unsigned used = c.total();
    if (used > ctx.top_rank()) fail(ErrorKind::CompositionMismatch, "multichain ranks exceed the top rank");
    c.parts.push_back(ctx.top_rank() - used);
    return c;
}

inline std::map<Composition, std::vector<FamilyTuple>> stratify(const Family& family) {
    std::map<Composition, std::vector<FamilyTuple>> out;
    for (const auto& t : family.tuples()) out[tuple_type(family.ctx(), family.mode(), t)].push_back(t);
    return out;
}

// ---------------------------------------------------------------------------
// enumeration

inline constexpr std::uint64_t kMaxEnumeration = std::uint64_t{1} << 24;

/// Exact number of valid tuples, from the closed-form counts.
inline BigInt count_all(const LatticeCtx& ctx, Mode mode, unsigned r) {
    const unsigned top_rank = ctx.top_rank();
    BigInt total = 0;
    const unsigned parts = mode == Mode::decomposition ? r : r + 1;
    for (const auto& a : compositions(top_rank, parts)) {
        switch (ctx.kind()) {
        case LatticeKind::boolean: total += multinomial(top_rank, a); break;
        case LatticeKind::subspace:
            total += mode == Mode::decomposition ? q_decomposition_count(top_rank, a, ctx.q())
                                                 : q_multinomial(top_rank, a, ctx.q());
            break;
        case LatticeKind::divisor: total += divisor_decomposition_count(ctx.n(), a); break;
        }
    }
    return total;
}

/// Every valid (non-strict) tuple exactly once, lexicographic in the
/// canonical element order.
inline std::vector<FamilyTuple> enumerate_all(const LatticeCtx& ctx, Mode mode, unsigned r) {
    if (r < 1) fail(ErrorKind::InvalidArgument, "tuple length r must be positive");
    if (count_all(ctx, mode, r) > kMaxEnumeration)
        fail(ErrorKind::TooLarge, "more than 2^24 tuples in " + describe(ctx));

    const auto elems = all_elements(ctx);
    std::vector<FamilyTuple> out;
    FamilyTuple cur;
    cur.elems.reserve(r);

    if (ctx.kind() == LatticeKind::boolean && mode == Mode::decomposition) {
        // assign each ground element to a part, in canonical element order
        const std::uint32_t full = std::get<BoolSet>(top(ctx)).bits;
        std::function<void(unsigned, std::uint32_t)> rec = [&](unsigned k, std::uint32_t used) {
            if (k + 1 == r) {
                cur.elems.push_back(BoolSet{full & ~used});
                out.push_back(cur);
                cur.elems.pop_back();
                return;
            }
            for (const auto& e : elems) {
                const auto bits = std::get<BoolSet>(e).bits;
                if (bits & used) continue;
                cur.elems.push_back(e);
                rec(k + 1, used | bits);
                cur.elems.pop_back();
            }
        };
        rec(0, 0);
        return out;
    }

    std::function<void(unsigned)> rec = [&](unsigned k) {
        if (k == r) {
            if (mode == Mode::multichain || is_decomposition(ctx, cur.elems)) out.push_back(cur);
            return;
        }
        for (const auto& e : elems) {
            if (mode == Mode::multichain && k > 0 && !leq(ctx, cur.elems.back(), e)) continue;
            if (mode == Mode::decomposition && k > 0) {
                // parts so far must stay independent (disjoint / coprime-split / direct)
                cur.elems.push_back(e);
                bool ok = true;
                if (ctx.kind() == LatticeKind::subspace) {
                    std::vector<const Subspace*> ptrs;
                    unsigned dims = 0;
                    for (const auto& p : cur.elems) {
                        ptrs.push_back(&std::get<Subspace>(p));
                        dims += std::get<Subspace>(p).dim;
                    }
                    ok = dims <= ctx.n() && stacked_rank(ctx, ptrs) == dims;
                } else {
                    const auto& topx = std::get<DivisorElem>(top(ctx)).exponents;
                    std::vector<unsigned> sum(topx.size(), 0);
                    for (const auto& p : cur.elems)
                        for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += std::get<DivisorElem>(p).exponents[i];
                    for (std::size_t i = 0; i < sum.size() && ok; ++i) ok = sum[i] <= topx[i];
                }
                if (ok) rec(k + 1);
                cur.elems.pop_back();
                continue;
            }
            cur.elems.push_back(e);
            rec(k + 1);
            cur.elems.pop_back();
        }
    };
    rec(0);
    return out;
}

inline Family family_of_all(const LatticeCtx& ctx, Mode mode, unsigned r) {
    Family f(ctx, mode, r);
    for (auto& t : enumerate_all(ctx, mode, r)) f.insert_unchecked(std::move(t));
    return f;
}

// ---------------------------------------------------------------------------
// phi: decompositions -> multichains of partial unions

namespace detail {
inline void require_phi_lattice(const LatticeCtx& ctx) {
    if (ctx.kind() == LatticeKind::subspace)
        fail(ErrorKind::ModeMismatch, "phi is defined for boolean and divisor lattices only");
}

inline LatticeElem join_disjoint(const LatticeCtx& ctx, const LatticeElem& a, const LatticeElem& b) {
    if (ctx.kind() == LatticeKind::boolean) return BoolSet{std::get<BoolSet>(a).bits | std::get<BoolSet>(b).bits};
    auto out = std::get<DivisorElem>(a);
    const auto& e = std::get<DivisorElem>(b).exponents;
    for (std::size_t i = 0; i < e.size(); ++i) out.exponents[i] += e[i];
    return out;
}

// b / a for a <= b: set difference or quotient of divisors
inline LatticeElem difference(const LatticeCtx& ctx, const LatticeElem& b, const LatticeElem& a) {
    if (ctx.kind() == LatticeKind::boolean) return BoolSet{std::get<BoolSet>(b).bits & ~std::get<BoolSet>(a).bits};
    auto out = std::get<DivisorElem>(b);
    const auto& e = std::get<DivisorElem>(a).exponents;
    for (std::size_t i = 0; i < e.size(); ++i) out.exponents[i] -= e[i];
    return out;
}
} // namespace detail

/// (D_1, ..., D_r) -> (D_1, D_1 v D_2, ..., D_1 v ... v D_{r-1}); union of
/// sets, product of divisors.
inline FamilyTuple phi(const LatticeCtx& ctx, const FamilyTuple& decomposition) {
    detail::require_phi_lattice(ctx);
    if (decomposition.elems.size() < 2) fail(ErrorKind::ModeMismatch, "phi needs r >= 2");
    if (!is_decomposition(ctx, decomposition.elems)) fail(ErrorKind::ModeMismatch, "phi expects a decomposition");
    FamilyTuple out;
    LatticeElem acc = decomposition.elems[0];
    out.elems.push_back(acc);
    for (std::size_t i = 1; i + 1 < decomposition.elems.size(); ++i) {
        acc = detail::join_disjoint(ctx, acc, decomposition.elems[i]);
        out.elems.push_back(acc);
    }
    return out;
}

/// Consecutive differences, with the complement of the last element as the
/// final part.
inline FamilyTuple phi_inverse(const LatticeCtx& ctx, const FamilyTuple& multichain) {
    detail::require_phi_lattice(ctx);
    if (multichain.elems.empty()) fail(ErrorKind::ModeMismatch, "phi_inverse needs a nonempty multichain");
    if (!is_valid_tuple(ctx, Mode::multichain, multichain.elems))
        fail(ErrorKind::ModeMismatch, "phi_inverse expects a multichain");
    FamilyTuple out;
    LatticeElem prev = bottom(ctx);
    for (const auto& c : multichain.elems) {
        out.elems.push_back(detail::difference(ctx, c, prev));
        prev = c;
    }
    out.elems.push_back(detail::difference(ctx, top(ctx), prev));
    return out;
}

inline Family phi(const Family& family) {
    if (family.mode() != Mode::decomposition) fail(ErrorKind::ModeMismatch, "phi expects a decomposition family");
    if (family.r() < 2) fail(ErrorKind::ModeMismatch, "phi needs r >= 2");
    Family out(family.ctx(), Mode::multichain, family.r() - 1);
    for (const auto& t : family.tuples()) out.insert_unchecked(phi(family.ctx(), t));
    return out;
}

} // namespace lym
