#pragma once

// The three finite lattices: subsets of [n], subspaces of F_q^n (q prime),
// and divisors of n. Elements are canonical, so equality is representation
// equality.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "lym/coefficients.hpp"
#include "lym/error.hpp"

namespace lym {

enum class LatticeKind { boolean, subspace, divisor };

constexpr std::string_view to_string(LatticeKind k) noexcept {
    switch (k) {
    case LatticeKind::boolean: return "boolean";
    case LatticeKind::subspace: return "subspace";
    case LatticeKind::divisor: return "divisor";
    }
    return "?";
}

inline constexpr unsigned kMaxBooleanN = 24;
inline constexpr unsigned kMaxSubspaceN = 6;
inline constexpr std::uint64_t kMaxSubspacePoints = 1u << 20;

inline bool is_prime(std::uint64_t q) {
    if (q < 2) return false;
    for (std::uint64_t d = 2; d * d <= q; ++d)
        if (q % d == 0) return false;
    return true;
}

class LatticeCtx {
public:
    static LatticeCtx boolean(unsigned n) {
        if (n < 1 || n > kMaxBooleanN)
            fail(ErrorKind::TooLarge, "boolean lattice needs 1 <= n <= 24, got " + std::to_string(n));
        LatticeCtx c;
        c.kind_ = LatticeKind::boolean;
        c.n_ = n;
        return c;
    }

    static LatticeCtx subspace(unsigned q, unsigned n) {
        if (!is_prime(q)) fail(ErrorKind::InvalidArgument, "q must be prime, got " + std::to_string(q));
        if (n < 1 || n > kMaxSubspaceN)
            fail(ErrorKind::TooLarge, "subspace lattice needs 1 <= n <= 6, got " + std::to_string(n));
        std::uint64_t points = 1;
        for (unsigned i = 0; i < n; ++i) {
            points *= q;
            if (points > kMaxSubspacePoints)
                fail(ErrorKind::TooLarge, "subspace lattice needs q^n <= 2^20");
        }
        LatticeCtx c;
        c.kind_ = LatticeKind::subspace;
        c.n_ = n;
        c.q_ = q;
        return c;
    }

    static LatticeCtx divisor(std::uint64_t n) {
        if (n < 1) fail(ErrorKind::InvalidArgument, "divisor lattice needs n >= 1");
        LatticeCtx c;
        c.kind_ = LatticeKind::divisor;
        c.n_ = n;
        c.factors_ = factorize(n);
        return c;
    }

    LatticeKind kind() const noexcept { return kind_; }
    /// Ground-set size, dimension, or the integer whose divisors are taken.
    std::uint64_t n() const noexcept { return n_; }
    unsigned q() const noexcept { return q_; }
    const std::vector<PrimePower>& factors() const noexcept { return factors_; }

    /// Rank of the top element.
    unsigned top_rank() const {
        return kind_ == LatticeKind::divisor ? big_omega(factors_) : static_cast<unsigned>(n_);
    }

    friend bool operator==(const LatticeCtx& a, const LatticeCtx& b) {
        return a.kind_ == b.kind_ && a.n_ == b.n_ && a.q_ == b.q_;
    }

private:
    LatticeCtx() = default;
    LatticeKind kind_ = LatticeKind::boolean;
    std::uint64_t n_ = 1;
    unsigned q_ = 0;
    std::vector<PrimePower> factors_;
};

inline std::string describe(const LatticeCtx& ctx) {
    switch (ctx.kind()) {
    case LatticeKind::boolean: return "B(" + std::to_string(ctx.n()) + ")";
    case LatticeKind::subspace: return "L_" + std::to_string(ctx.q()) + "(" + std::to_string(ctx.n()) + ")";
    case LatticeKind::divisor: return "Div(" + std::to_string(ctx.n()) + ")";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// element representations

/// Subset of [n]; bit i set means i+1 is a member.
struct BoolSet {
    std::uint32_t bits = 0;
    friend auto operator<=>(const BoolSet&, const BoolSet&) = default;
};

/// Row space given by its reduced row echelon basis (no zero rows),
/// stored row-major with `dim` rows of n entries.
struct Subspace {
    unsigned dim = 0;
    std::vector<std::uint32_t> entries;
    friend auto operator<=>(const Subspace&, const Subspace&) = default;
};

/// Exponent vector aligned with the context's prime list.
struct DivisorElem {
    std::vector<unsigned> exponents;
    friend auto operator<=>(const DivisorElem&, const DivisorElem&) = default;
};

using LatticeElem = std::variant<BoolSet, Subspace, DivisorElem>;

// ---------------------------------------------------------------------------
// GF(p) linear algebra

namespace gf {

using Matrix = std::vector<std::vector<std::uint32_t>>;

inline std::uint32_t inverse(std::uint32_t a, std::uint32_t p) {
    // extended Euclid on signed 64-bit
    std::int64_t t = 0, new_t = 1, r = p, new_r = a;
    while (new_r != 0) {
        std::int64_t quot = r / new_r;
        t = std::exchange(new_t, t - quot * new_t);
        r = std::exchange(new_r, r - quot * new_r);
    }
    if (t < 0) t += p;
    return static_cast<std::uint32_t>(t);
}

/// Gauss-Jordan elimination in place; returns the canonical basis with zero
/// rows removed.
inline Matrix rref(Matrix m, unsigned cols, std::uint32_t p) {
    std::size_t lead = 0;
    for (unsigned c = 0; c < cols && lead < m.size(); ++c) {
        std::size_t pivot = lead;
        while (pivot < m.size() && m[pivot][c] == 0) ++pivot;
        if (pivot == m.size()) continue;
        std::swap(m[lead], m[pivot]);
        const std::uint64_t inv = inverse(m[lead][c], p);
        for (auto& v : m[lead]) v = static_cast<std::uint32_t>(v * inv % p);
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == lead || m[i][c] == 0) continue;
            const std::uint64_t factor = m[i][c];
            for (unsigned j = 0; j < cols; ++j)
                m[i][j] = static_cast<std::uint32_t>((m[i][j] + (p - factor) * m[lead][j]) % p);
        }
        ++lead;
    }
    m.resize(lead);
    return m;
}

} // namespace gf

// ---------------------------------------------------------------------------
// construction and inspection

namespace detail {

inline const char* kind_name(const LatticeElem& e) {
    switch (e.index()) {
    case 0: return "subset";
    case 1: return "subspace";
    default: return "divisor";
    }
}

inline void require_kind(const LatticeCtx& ctx, const LatticeElem& e) {
    const std::size_t want = static_cast<std::size_t>(ctx.kind());
    if (e.index() != want)
        fail(ErrorKind::ContextMismatch,
             std::string("element is a ") + kind_name(e) + " but the lattice is " + describe(ctx));
}

inline gf::Matrix rows_of(const Subspace& s, unsigned n) {
    gf::Matrix m(s.dim, std::vector<std::uint32_t>(n));
    for (unsigned i = 0; i < s.dim; ++i)
        for (unsigned j = 0; j < n; ++j) m[i][j] = s.entries[i * n + j];
    return m;
}

inline Subspace from_rref(const gf::Matrix& m) {
    Subspace s;
    s.dim = static_cast<unsigned>(m.size());
    for (const auto& row : m) s.entries.insert(s.entries.end(), row.begin(), row.end());
    return s;
}

} // namespace detail

/// Throws ContextMismatch unless `e` is a canonical element of `ctx`.
inline void validate(const LatticeCtx& ctx, const LatticeElem& e) {
    detail::require_kind(ctx, e);
    switch (ctx.kind()) {
    case LatticeKind::boolean: {
        const auto bits = std::get<BoolSet>(e).bits;
        if (ctx.n() < 32 && (bits >> ctx.n()) != 0)
            fail(ErrorKind::ContextMismatch, "subset has members outside [" + std::to_string(ctx.n()) + "]");
        break;
    }
    case LatticeKind::subspace: {
        const auto& s = std::get<Subspace>(e);
        const unsigned n = static_cast<unsigned>(ctx.n());
        if (s.entries.size() != static_cast<std::size_t>(s.dim) * n || s.dim > n)
            fail(ErrorKind::ContextMismatch, "subspace basis has the wrong shape for " + describe(ctx));
        for (auto v : s.entries)
            if (v >= ctx.q()) fail(ErrorKind::ContextMismatch, "subspace entry outside F_" + std::to_string(ctx.q()));
        if (detail::from_rref(gf::rref(detail::rows_of(s, n), n, ctx.q())) != s)
            fail(ErrorKind::ContextMismatch, "subspace basis is not in reduced row echelon form");
        break;
    }
    case LatticeKind::divisor: {
        const auto& d = std::get<DivisorElem>(e);
        if (d.exponents.size() != ctx.factors().size())
            fail(ErrorKind::ContextMismatch, "exponent vector length differs from the prime list of " + describe(ctx));
        for (std::size_t i = 0; i < d.exponents.size(); ++i)
            if (d.exponents[i] > ctx.factors()[i].exponent)
                fail(ErrorKind::ContextMismatch, "element does not divide " + std::to_string(ctx.n()));
        break;
    }
    }
}

/// Subset from 1-based members.
inline LatticeElem make_subset(const LatticeCtx& ctx, const std::vector<unsigned>& members) {
    if (ctx.kind() != LatticeKind::boolean) fail(ErrorKind::ContextMismatch, "subset in " + describe(ctx));
    BoolSet s;
    for (unsigned m : members) {
        if (m < 1 || m > ctx.n())
            fail(ErrorKind::ContextMismatch, "member " + std::to_string(m) + " outside [" + std::to_string(ctx.n()) + "]");
        s.bits |= 1u << (m - 1);
    }
    return s;
}

/// Row space of arbitrary rows over F_q, canonicalized.
inline LatticeElem make_subspace(const LatticeCtx& ctx, const gf::Matrix& rows) {
    if (ctx.kind() != LatticeKind::subspace) fail(ErrorKind::ContextMismatch, "subspace in " + describe(ctx));
    const unsigned n = static_cast<unsigned>(ctx.n());
    for (const auto& row : rows) {
        if (row.size() != n)
            fail(ErrorKind::ContextMismatch, "basis row has " + std::to_string(row.size()) + " entries, expected " + std::to_string(n));
        for (auto v : row)
            if (v >= ctx.q()) fail(ErrorKind::ContextMismatch, "entry " + std::to_string(v) + " outside F_" + std::to_string(ctx.q()));
    }
    return detail::from_rref(gf::rref(rows, n, ctx.q()));
}

inline LatticeElem make_divisor(const LatticeCtx& ctx, std::uint64_t value) {
    if (ctx.kind() != LatticeKind::divisor) fail(ErrorKind::ContextMismatch, "divisor in " + describe(ctx));
    if (value == 0 || ctx.n() % value != 0)
        fail(ErrorKind::ContextMismatch, std::to_string(value) + " does not divide " + std::to_string(ctx.n()));
    DivisorElem d;
    for (const auto& pp : ctx.factors()) {
        unsigned e = 0;
        while (value % pp.prime == 0) {
            value /= pp.prime;
            ++e;
        }
        d.exponents.push_back(e);
    }
    return d;
}

/// Members of a subset, 1-based ascending.
inline std::vector<unsigned> subset_members(const BoolSet& s) {
    std::vector<unsigned> out;
    for (unsigned i = 0; i < 32; ++i)
        if (s.bits >> i & 1u) out.push_back(i + 1);
    return out;
}

inline std::uint64_t divisor_value(const LatticeCtx& ctx, const DivisorElem& d) {
    std::uint64_t v = 1;
    for (std::size_t i = 0; i < d.exponents.size(); ++i)
        for (unsigned k = 0; k < d.exponents[i]; ++k) v *= ctx.factors()[i].prime;
    return v;
}

inline gf::Matrix subspace_rows(const LatticeCtx& ctx, const Subspace& s) {
    return detail::rows_of(s, static_cast<unsigned>(ctx.n()));
}

inline unsigned rank(const LatticeCtx& ctx, const LatticeElem& e) {
    detail::require_kind(ctx, e);
    switch (ctx.kind()) {
    case LatticeKind::boolean: return static_cast<unsigned>(std::popcount(std::get<BoolSet>(e).bits));
    case LatticeKind::subspace: return std::get<Subspace>(e).dim;
    case LatticeKind::divisor: {
        unsigned r = 0;
        for (unsigned v : std::get<DivisorElem>(e).exponents) r += v;
        return r;
    }
    }
    return 0;
}

inline LatticeElem bottom(const LatticeCtx& ctx) {
    switch (ctx.kind()) {
    case LatticeKind::boolean: return BoolSet{};
    case LatticeKind::subspace: return Subspace{};
    case LatticeKind::divisor: return DivisorElem{std::vector<unsigned>(ctx.factors().size(), 0)};
    }
    return BoolSet{};
}

inline LatticeElem top(const LatticeCtx& ctx) {
    switch (ctx.kind()) {
    case LatticeKind::boolean:
        return BoolSet{ctx.n() == 32 ? ~0u : ((1u << ctx.n()) - 1u)};
    case LatticeKind::subspace: {
        const unsigned n = static_cast<unsigned>(ctx.n());
        gf::Matrix id(n, std::vector<std::uint32_t>(n, 0));
        for (unsigned i = 0; i < n; ++i) id[i][i] = 1;
        return detail::from_rref(id);
    }
    case LatticeKind::divisor: {
        DivisorElem d;
        for (const auto& pp : ctx.factors()) d.exponents.push_back(pp.exponent);
        return d;
    }
    }
    return BoolSet{};
}

/// Dimension of the span of all bases together.
inline unsigned stacked_rank(const LatticeCtx& ctx, const std::vector<const Subspace*>& parts) {
    const unsigned n = static_cast<unsigned>(ctx.n());
    gf::Matrix m;
    for (const Subspace* s : parts) {
        auto rows = detail::rows_of(*s, n);
        m.insert(m.end(), rows.begin(), rows.end());
    }
    return static_cast<unsigned>(gf::rref(std::move(m), n, ctx.q()).size());
}

/// Lattice order: inclusion, subspace containment, or divisibility.
inline bool leq(const LatticeCtx& ctx, const LatticeElem& x, const LatticeElem& y) {
    detail::require_kind(ctx, x);
    detail::require_kind(ctx, y);
    switch (ctx.kind()) {
    case LatticeKind::boolean: {
        const auto a = std::get<BoolSet>(x).bits, b = std::get<BoolSet>(y).bits;
        return (a & ~b) == 0;
    }
    case LatticeKind::subspace: {
        const auto& a = std::get<Subspace>(x);
        const auto& b = std::get<Subspace>(y);
        if (a.dim > b.dim) return false;
        return stacked_rank(ctx, {&a, &b}) == b.dim;
    }
    case LatticeKind::divisor: {
        const auto& a = std::get<DivisorElem>(x).exponents;
        const auto& b = std::get<DivisorElem>(y).exponents;
        if (a.size() != b.size()) fail(ErrorKind::ContextMismatch, "exponent vectors of different length");
        for (std::size_t i = 0; i < a.size(); ++i)
            if (a[i] > b[i]) return false;
        return true;
    }
    }
    return false;
}

// ---------------------------------------------------------------------------
// enumeration

namespace detail {

/// k-subsets of {0..n-1} in lexicographic order.
inline void for_each_combination(unsigned n, unsigned k, const std::function<void(const std::vector<unsigned>&)>& fn) {
    std::vector<unsigned> idx(k);
    for (unsigned i = 0; i < k; ++i) idx[i] = i;
    if (k > n) return;
    while (true) {
        fn(idx);
        int i = static_cast<int>(k) - 1;
        while (i >= 0 && idx[i] == n - k + static_cast<unsigned>(i)) --i;
        if (i < 0) return;
        ++idx[i];
        for (unsigned j = static_cast<unsigned>(i) + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

} // namespace detail

/// Every element of rank k exactly once, in canonical order: subsets by
/// lexicographic member lists, subspaces by pivot columns then entries,
/// divisors ascending.
inline std::vector<LatticeElem> enumerate_rank(const LatticeCtx& ctx, unsigned k) {
    if (k > ctx.top_rank())
        fail(ErrorKind::RankOutOfRange, "rank " + std::to_string(k) + " exceeds " + std::to_string(ctx.top_rank()));
    std::vector<LatticeElem> out;
    switch (ctx.kind()) {
    case LatticeKind::boolean:
        detail::for_each_combination(static_cast<unsigned>(ctx.n()), k, [&](const std::vector<unsigned>& idx) {
            BoolSet s;
            for (unsigned i : idx) s.bits |= 1u << i;
            out.emplace_back(s);
        });
        break;
    case LatticeKind::subspace: {
        const unsigned n = static_cast<unsigned>(ctx.n());
        detail::for_each_combination(n, k, [&](const std::vector<unsigned>& pivots) {
            std::vector<bool> is_pivot(n, false);
            for (unsigned c : pivots) is_pivot[c] = true;
            // free slots: right of the row's pivot, in non-pivot columns
            std::vector<std::size_t> slots;
            for (unsigned i = 0; i < k; ++i)
                for (unsigned j = pivots[i] + 1; j < n; ++j)
                    if (!is_pivot[j]) slots.push_back(i * n + j);
            Subspace s;
            s.dim = k;
            s.entries.assign(static_cast<std::size_t>(k) * n, 0);
            for (unsigned i = 0; i < k; ++i) s.entries[i * n + pivots[i]] = 1;
            while (true) {
                out.emplace_back(s);
                std::size_t pos = slots.size();
                while (pos > 0) {
                    auto& v = s.entries[slots[pos - 1]];
                    if (++v < ctx.q()) break;
                    v = 0;
                    --pos;
                }
                if (pos == 0) break;
            }
        });
        break;
    }
    case LatticeKind::divisor: {
        std::vector<std::pair<std::uint64_t, DivisorElem>> found;
        const auto& f = ctx.factors();
        DivisorElem cur{std::vector<unsigned>(f.size(), 0)};
        std::function<void(std::size_t, unsigned)> rec = [&](std::size_t i, unsigned left) {
            if (i == f.size()) {
                if (left == 0) found.emplace_back(divisor_value(ctx, cur), cur);
                return;
            }
            for (unsigned e = 0; e <= f[i].exponent && e <= left; ++e) {
                cur.exponents[i] = e;
                rec(i + 1, left - e);
            }
            cur.exponents[i] = 0;
        };
        rec(0, k);
        std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        for (auto& [v, d] : found) out.emplace_back(std::move(d));
        break;
    }
    }
    return out;
}

/// All elements, rank levels ascending, canonical order within a level.
inline std::vector<LatticeElem> all_elements(const LatticeCtx& ctx) {
    std::vector<LatticeElem> out;
    for (unsigned k = 0; k <= ctx.top_rank(); ++k) {
        auto level = enumerate_rank(ctx, k);
        out.insert(out.end(), std::make_move_iterator(level.begin()), std::make_move_iterator(level.end()));
    }
    return out;
}

// ---------------------------------------------------------------------------
// decompositions and complements

/// Disjoint union equal to [n] / direct sum equal to F_q^n / product equal to n.
inline bool is_decomposition(const LatticeCtx& ctx, const std::vector<LatticeElem>& parts) {
    if (parts.empty()) fail(ErrorKind::InvalidArgument, "empty tuple");
    for (const auto& p : parts) validate(ctx, p);
    switch (ctx.kind()) {
    case LatticeKind::boolean: {
        std::uint32_t seen = 0;
        for (const auto& p : parts) {
            const auto bits = std::get<BoolSet>(p).bits;
            if (seen & bits) return false;
            seen |= bits;
        }
        return seen == std::get<BoolSet>(top(ctx)).bits;
    }
    case LatticeKind::subspace: {
        unsigned total = 0;
        std::vector<const Subspace*> ptrs;
        for (const auto& p : parts) {
            total += std::get<Subspace>(p).dim;
            ptrs.push_back(&std::get<Subspace>(p));
        }
        return total == ctx.n() && stacked_rank(ctx, ptrs) == ctx.n();
    }
    case LatticeKind::divisor: {
        std::vector<unsigned> sum(ctx.factors().size(), 0);
        for (const auto& p : parts) {
            const auto& e = std::get<DivisorElem>(p).exponents;
            for (std::size_t i = 0; i < e.size(); ++i) sum[i] += e[i];
        }
        return sum == std::get<DivisorElem>(top(ctx)).exponents;
    }
    }
    return false;
}

/// Brute-force count of subspaces y with x + y = F_q^n direct.
inline std::uint64_t count_complements(const LatticeCtx& ctx, const LatticeElem& x) {
    if (ctx.kind() != LatticeKind::subspace)
        fail(ErrorKind::ContextMismatch, "complements are counted in subspace lattices only");
    validate(ctx, x);
    std::uint64_t count = 0;
    for (const auto& y : all_elements(ctx))
        if (is_decomposition(ctx, {x, y})) ++count;
    return count;
}

/// Rank-generating counts of an enumerated lattice (used as a cross-check
/// against the closed forms).
inline std::vector<std::uint64_t> level_sizes(const LatticeCtx& ctx) {
    std::vector<std::uint64_t> out;
    for (unsigned k = 0; k <= ctx.top_rank(); ++k) out.push_back(enumerate_rank(ctx, k).size());
    return out;
}

} // namespace lym
