#pragma once

// Counting coefficients and bound parameters: multinomials, their q-analogs,
// multiflag coefficients, divisor-lattice counts, sigma/tau, and the
// "sum of the m largest" bound.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "lym/error.hpp"
#include "lym/exact.hpp"

namespace lym {

/// Ordered sequence of non-negative parts.
struct Composition {
    std::vector<unsigned> parts;

    Composition() = default;
    Composition(std::vector<unsigned> p) : parts(std::move(p)) {}
    Composition(std::initializer_list<unsigned> p) : parts(p) {}

    unsigned total() const { return std::accumulate(parts.begin(), parts.end(), 0u); }
    std::size_t size() const noexcept { return parts.size(); }
    unsigned operator[](std::size_t i) const { return parts[i]; }

    friend auto operator<=>(const Composition&, const Composition&) = default;
};

/// "a1,a2,...,ar"
inline std::string to_string(const Composition& c) {
    std::string out;
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(c[i]);
    }
    return out;
}

/// All compositions of `total` into `parts` parts, each at least `min_part`,
/// in lexicographic order.
inline std::vector<Composition> compositions(unsigned total, unsigned parts, unsigned min_part = 0) {
    std::vector<Composition> out;
    if (parts == 0) {
        if (total == 0) out.emplace_back();
        return out;
    }
    std::vector<unsigned> cur(parts);
    std::function<void(unsigned, unsigned)> rec = [&](unsigned idx, unsigned left) {
        if (idx + 1 == parts) {
            if (left >= min_part) {
                cur[idx] = left;
                out.emplace_back(cur);
            }
            return;
        }
        const unsigned reserve = min_part * (parts - idx - 1);
        if (left < reserve) return;
        for (unsigned v = min_part; v + reserve <= left; ++v) {
            cur[idx] = v;
            rec(idx + 1, left - v);
        }
    };
    rec(0, total);
    return out;
}

namespace detail {
inline void require_total(const Composition& a, unsigned n) {
    if (a.total() != n)
        fail(ErrorKind::CompositionMismatch,
             "parts (" + to_string(a) + ") sum to " + std::to_string(a.total()) + ", expected " + std::to_string(n));
}
} // namespace detail

/// n! / (a_1! ... a_r!)
inline BigInt multinomial(unsigned n, const Composition& a) {
    detail::require_total(a, n);
    BigInt out = factorial(n);
    for (unsigned part : a.parts) out /= factorial(part);
    return out;
}

/// (q^n - 1)(q^(n-1) - 1)...(q - 1); the empty product for n = 0.
inline BigInt q_factorial(unsigned n, unsigned q) {
    BigInt out = 1;
    for (unsigned i = 1; i <= n; ++i) out *= pow_ui(BigInt(q), i) - 1;
    return out;
}

inline void require_q(unsigned q) {
    if (q < 2) fail(ErrorKind::InvalidArgument, "q must be at least 2, got " + std::to_string(q));
}

/// [n]_q! / ([a_1]_q! ... [a_r]_q!)
inline BigInt q_multinomial(unsigned n, const Composition& a, unsigned q) {
    detail::require_total(a, n);
    require_q(q);
    BigInt out = q_factorial(n, q);
    for (unsigned part : a.parts) mpz_divexact(out.get_mpz_t(), out.get_mpz_t(), q_factorial(part, q).get_mpz_t());
    return out;
}

/// Gaussian coefficient [n choose k]_q.
inline BigInt q_binomial(unsigned n, unsigned k, unsigned q) {
    if (k > n) return 0;
    return q_multinomial(n, Composition{k, n - k}, q);
}

/// Number of ordered r-decompositions of F_q^n with dim D_i = a_i:
/// q-multinomial times prod_{i<j} q^(a_i a_j).
inline BigInt q_decomposition_count(unsigned n, const Composition& a, unsigned q) {
    BigInt out = q_multinomial(n, a, q);
    unsigned long exponent = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = i + 1; j < a.size(); ++j) exponent += static_cast<unsigned long>(a[i]) * a[j];
    return out * pow_ui(BigInt(q), exponent);
}

/// [n]_R = n omega_n / (2 omega_{n-1}).
inline SymReal real_integer(unsigned n) {
    if (n == 0) fail(ErrorKind::InvalidArgument, "[0]_R is undefined");
    return SymReal(BigRat(n)) * ball_volume(n) / (SymReal(BigRat(2)) * ball_volume(n - 1));
}

/// [n]_R! = n! omega_n / 2^n, the total measure of the flag manifold.
inline SymReal real_factorial(unsigned n) {
    BigInt two_n = 1;
    two_n <<= n;
    return SymReal(make_rat(factorial(n), two_n)) * ball_volume(n);
}

/// Multiflag coefficient [n; a_1,...,a_r]_R = multinomial(n,a) omega_n / prod omega_{a_i}.
inline SymReal multiflag_coefficient(unsigned n, const Composition& a) {
    detail::require_total(a, n);
    for (unsigned part : a.parts)
        if (part == 0) fail(ErrorKind::ZeroPart, "multiflag coefficients need positive parts, got (" + to_string(a) + ")");
    SymReal denom(BigRat(1));
    for (unsigned part : a.parts) denom *= ball_volume(part);
    return SymReal(BigRat(multinomial(n, a))) * ball_volume(n) / denom;
}

// ---------------------------------------------------------------------------
// divisor lattice

struct PrimePower {
    std::uint64_t prime = 0;
    unsigned exponent = 0;
    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Trial division; primes ascending. factorize(1) is empty.
inline std::vector<PrimePower> factorize(std::uint64_t n) {
    if (n == 0) fail(ErrorKind::InvalidArgument, "cannot factorize 0");
    std::vector<PrimePower> out;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        PrimePower pp{p, 0};
        while (n % p == 0) {
            n /= p;
            ++pp.exponent;
        }
        out.push_back(pp);
    }
    if (n > 1) out.push_back({n, 1});
    return out;
}

inline unsigned big_omega(const std::vector<PrimePower>& f) {
    unsigned r = 0;
    for (const auto& pp : f) r += pp.exponent;
    return r;
}

/// W_0(n), ..., W_rk(n)(n): coefficients of prod_p (1 + x + ... + x^e_p).
inline std::vector<BigInt> divisor_rank_counts(std::uint64_t n) {
    std::vector<BigInt> poly{1};
    for (const auto& pp : factorize(n)) {
        std::vector<BigInt> next(poly.size() + pp.exponent, 0);
        for (std::size_t i = 0; i < poly.size(); ++i)
            for (unsigned j = 0; j <= pp.exponent; ++j) next[i + j] += poly[i];
        poly = std::move(next);
    }
    return poly;
}

/// N_{a_1..a_r}(n): ordered factorizations n = x_1 ... x_r with rk(x_i) = a_i.
/// Convolution over primes on partial rank vectors; the state space is the
/// box prod (a_i + 1).
inline BigInt divisor_decomposition_count(std::uint64_t n, const Composition& a) {
    const auto f = factorize(n);
    detail::require_total(a, big_omega(f));
    const std::size_t r = a.size();
    if (r == 0) return 1;

    // mixed-radix index over partial rank vectors
    std::vector<std::size_t> stride(r);
    std::size_t states = 1;
    for (std::size_t i = 0; i < r; ++i) {
        stride[i] = states;
        states *= a[i] + 1;
    }
    std::vector<BigInt> count(states, 0);
    count[0] = 1;

    std::vector<unsigned> ranks(r), split(r);
    for (const auto& pp : f) {
        std::vector<BigInt> next(states, 0);
        for (std::size_t s = 0; s < states; ++s) {
            if (count[s] == 0) continue;
            std::size_t rest = s;
            for (std::size_t i = 0; i < r; ++i) {
                ranks[i] = static_cast<unsigned>(rest % (a[i] + 1));
                rest /= a[i] + 1;
            }
            // every ordered split of the exponent that stays inside the box
            for (const auto& c : compositions(pp.exponent, static_cast<unsigned>(r))) {
                std::size_t target = s;
                bool inside = true;
                for (std::size_t i = 0; i < r && inside; ++i) {
                    if (ranks[i] + c[i] > a[i]) inside = false;
                    target += c[i] * stride[i];
                }
                if (inside) next[target] += count[s];
            }
        }
        count = std::move(next);
    }
    return count[states - 1];
}

// ---------------------------------------------------------------------------
// sigma / tau

/// Forbidden chain lengths t_1, ..., t_r.
struct ChainParams {
    std::vector<unsigned> t;

    ChainParams() = default;
    ChainParams(std::vector<unsigned> values) : t(std::move(values)) { validate(); }
    ChainParams(std::initializer_list<unsigned> values) : t(values) { validate(); }

    std::size_t r() const noexcept { return t.size(); }

    void validate() const {
        if (t.empty()) fail(ErrorKind::InvalidArgument, "chain parameters need at least one entry");
        for (unsigned v : t)
            if (v == 0) fail(ErrorKind::InvalidArgument, "chain parameters must be positive");
    }
    friend bool operator==(const ChainParams&, const ChainParams&) = default;
};

struct SigmaTau {
    std::uint64_t sigma = 0;
    std::uint64_t tau = 0;
    friend bool operator==(const SigmaTau&, const SigmaTau&) = default;
};

/// tau = prod t_k, sigma = tau / max t_k.
inline SigmaTau sigma_tau(const ChainParams& params) {
    params.validate();
    std::uint64_t tau = 1;
    for (unsigned v : params.t) {
        if (tau > std::numeric_limits<std::uint64_t>::max() / v)
            fail(ErrorKind::TooLarge, "product of chain parameters overflows 64 bits");
        tau *= v;
    }
    const unsigned mx = *std::max_element(params.t.begin(), params.t.end());
    return {tau / mx, tau};
}

// ---------------------------------------------------------------------------
// sum of the m largest

template <class T>
struct SumType {
    using type = T;
};
template <>
struct SumType<SymReal> {
    using type = PiSum;
};

template <class T>
struct LargestSum {
    typename SumType<T>::type sum{};
    /// Selected values, descending.
    std::vector<T> chosen;
};

/// Sum of the m largest values with multiplicity; missing terms count as 0.
template <class T, class Greater = std::greater<>>
LargestSum<T> bound_sum_largest(std::vector<T> values, std::uint64_t m, Greater greater = {}) {
    std::stable_sort(values.begin(), values.end(), [&](const T& x, const T& y) { return greater(x, y); });
    LargestSum<T> out;
    const std::size_t take = static_cast<std::size_t>(std::min<std::uint64_t>(m, values.size()));
    for (std::size_t i = 0; i < take; ++i) {
        out.sum += values[i];
        out.chosen.push_back(values[i]);
    }
    return out;
}

struct SymRealGreater {
    bool operator()(const SymReal& x, const SymReal& y) const { return symreal_compare(x, y) > 0; }
};

} // namespace lym
