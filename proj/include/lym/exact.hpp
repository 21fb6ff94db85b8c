#pragma once

// Exact numbers: GMP-backed integers and rationals, plus values of the form
// rational * pi^m and finite sums of them. Nothing here rounds; the only
// floating point is the optional approx() display helper.

#include <gmpxx.h>

#include <cmath>
#include <compare>
#include <cstdint>
#include <map>
#include <mutex>
#include <numbers>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lym/error.hpp"

namespace lym {

using BigInt = mpz_class;
using BigRat = mpq_class;

inline BigRat make_rat(const BigInt& num, const BigInt& den) {
    if (den == 0) fail(ErrorKind::InvalidArgument, "zero denominator");
    BigRat r(num, den);
    r.canonicalize();
    return r;
}

/// Always "p/q", even for integers, so every rational has one spelling.
inline std::string to_string(const BigRat& r) {
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline std::string to_string(const BigInt& z) { return z.get_str(); }

/// Accepts "p", "p/q" and a leading '-'.
inline BigRat parse_rational(std::string_view text) {
    auto bad = [&] { fail(ErrorKind::MalformedInput, "not a rational: '" + std::string(text) + "'"); };
    if (text.empty()) bad();
    auto slash = text.find('/');
    auto digits_ok = [](std::string_view s, bool allow_sign) {
        if (allow_sign && !s.empty() && s.front() == '-') s.remove_prefix(1);
        if (s.empty()) return false;
        for (char c : s)
            if (c < '0' || c > '9') return false;
        return true;
    };
    std::string_view num = text.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
    if (!digits_ok(num, true) || !digits_ok(den, false)) bad();
    BigInt p(std::string(num), 10), q(std::string(den), 10);
    if (q == 0) bad();
    return make_rat(p, q);
}

inline BigInt factorial(unsigned n) {
    BigInt out;
    mpz_fac_ui(out.get_mpz_t(), n);
    return out;
}

inline BigInt binomial(unsigned n, unsigned k) {
    if (k > n) return 0;
    BigInt out;
    mpz_bin_uiui(out.get_mpz_t(), n, k);
    return out;
}

inline BigInt pow_ui(const BigInt& base, unsigned long e) {
    BigInt out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), e);
    return out;
}

inline BigRat pow_ui(const BigRat& base, unsigned long e) {
    BigRat out(1);
    for (unsigned i = 0; i < e; ++i) out *= base;
    return out;
}

// ---------------------------------------------------------------------------
// pi enclosure

/// Closed interval [lo, hi] guaranteed to contain pi.
struct PiEnclosure {
    BigRat lo;
    BigRat hi;
    unsigned bits = 0;
};

namespace detail {

// Sum of floor(S / x^(2k+1)) / (2k+1) with alternating signs; returns the
// scaled value and the number of terms taken. Each term is off by less
// than 2 and the tail is below 1, so the error is at most 2*terms + 1.
inline std::pair<BigInt, unsigned> arctan_inverse_scaled(unsigned long x, const BigInt& scale) {
    BigInt sum = 0;
    BigInt power = scale / x;
    const unsigned long x2 = x * x;
    unsigned terms = 0;
    for (unsigned long k = 0; power != 0; ++k, ++terms) {
        BigInt term = power / (2 * k + 1);
        if (k % 2 == 0)
            sum += term;
        else
            sum -= term;
        power /= x2;
    }
    return {sum, terms};
}

inline PiEnclosure compute_pi_enclosure(unsigned bits) {
    constexpr unsigned guard = 32;
    BigInt scale = 1;
    scale <<= bits + guard;
    auto [a5, k5] = arctan_inverse_scaled(5, scale);
    auto [a239, k239] = arctan_inverse_scaled(239, scale);
    // Machin: pi = 16 atan(1/5) - 4 atan(1/239)
    BigInt centre = 16 * a5 - 4 * a239;
    BigInt err = 16 * (2 * BigInt(k5) + 1) + 4 * (2 * BigInt(k239) + 1) + 1;
    return PiEnclosure{make_rat(centre - err, scale), make_rat(centre + err, scale), bits};
}

} // namespace detail

/// Enclosure whose width is below 2^-bits. Memoized per precision.
inline const PiEnclosure& pi_enclosure(unsigned bits) {
    static std::mutex mutex;
    static std::map<unsigned, PiEnclosure> cache;
    std::lock_guard lock(mutex);
    auto it = cache.find(bits);
    if (it == cache.end()) it = cache.emplace(bits, detail::compute_pi_enclosure(bits)).first;
    return it->second;
}

inline constexpr unsigned kPiStartBits = 64;
inline constexpr unsigned kPiMaxBits = 4096;

// ---------------------------------------------------------------------------
// SymReal

/// coeff * pi^pi_power with a non-negative integer power. A zero value is
/// always stored with power 0.
class SymReal {
public:
    SymReal() = default;
    SymReal(BigRat coeff, unsigned pi_power = 0) : coeff_(std::move(coeff)), pi_power_(pi_power) {
        coeff_.canonicalize();
        if (coeff_ == 0) pi_power_ = 0;
    }
    SymReal(long value) : SymReal(BigRat(value)) {}

    /// Rejects anything but a whole power: coefficients here never carry sqrt(pi).
    static SymReal from_half_power(BigRat coeff, unsigned twice_power) {
        if (twice_power % 2 != 0 && coeff != 0)
            fail(ErrorKind::InvalidArgument, "half-integer power of pi is not representable");
        return SymReal(std::move(coeff), twice_power / 2);
    }

    const BigRat& coeff() const noexcept { return coeff_; }
    unsigned pi_power() const noexcept { return pi_power_; }
    bool is_zero() const { return coeff_ == 0; }

    friend SymReal operator*(const SymReal& a, const SymReal& b) {
        return SymReal(a.coeff_ * b.coeff_, a.pi_power_ + b.pi_power_);
    }
    friend SymReal operator/(const SymReal& a, const SymReal& b) {
        if (b.is_zero()) fail(ErrorKind::InvalidArgument, "division by zero");
        if (a.is_zero()) return SymReal();
        if (a.pi_power_ < b.pi_power_)
            fail(ErrorKind::InvalidArgument, "quotient would carry a negative power of pi");
        return SymReal(a.coeff_ / b.coeff_, a.pi_power_ - b.pi_power_);
    }
    SymReal& operator*=(const SymReal& o) { return *this = *this * o; }
    SymReal& operator/=(const SymReal& o) { return *this = *this / o; }

    friend bool operator==(const SymReal& a, const SymReal& b) {
        return a.pi_power_ == b.pi_power_ && a.coeff_ == b.coeff_;
    }

    double approx() const { return coeff_.get_d() * std::pow(std::numbers::pi, pi_power_); }

private:
    BigRat coeff_{0};
    unsigned pi_power_ = 0;
};

inline std::string to_string(const SymReal& x) {
    std::string out = to_string(x.coeff());
    if (x.pi_power() == 1) out += "*pi";
    if (x.pi_power() > 1) out += "*pi^" + std::to_string(x.pi_power());
    return out;
}

// ---------------------------------------------------------------------------
// PiSum

/// Finite sum of SymReals, kept as a polynomial in pi with rational
/// coefficients. Zero coefficients are dropped.
class PiSum {
public:
    PiSum() = default;
    PiSum(const SymReal& x) { *this += x; }

    PiSum& operator+=(const SymReal& x) {
        if (x.is_zero()) return *this;
        BigRat& c = terms_[x.pi_power()];
        c += x.coeff();
        if (c == 0) terms_.erase(x.pi_power());
        return *this;
    }
    PiSum& operator+=(const PiSum& o) {
        for (const auto& [power, c] : o.terms_) *this += SymReal(c, power);
        return *this;
    }
    PiSum& operator-=(const PiSum& o) {
        for (const auto& [power, c] : o.terms_) *this += SymReal(-c, power);
        return *this;
    }
    friend PiSum operator+(PiSum a, const PiSum& b) { return a += b; }
    friend PiSum operator-(PiSum a, const PiSum& b) { return a -= b; }
    friend bool operator==(const PiSum&, const PiSum&) = default;

    bool is_zero() const noexcept { return terms_.empty(); }
    /// Ascending powers of pi.
    std::vector<SymReal> terms() const {
        std::vector<SymReal> out;
        for (const auto& [power, c] : terms_) out.emplace_back(c, power);
        return out;
    }
    const std::map<unsigned, BigRat>& coefficients() const noexcept { return terms_; }

    double approx() const {
        double out = 0;
        for (const auto& [power, c] : terms_) out += c.get_d() * std::pow(std::numbers::pi, power);
        return out;
    }

private:
    std::map<unsigned, BigRat> terms_;
};

inline std::string to_string(const PiSum& s) {
    if (s.is_zero()) return "0/1";
    std::string out;
    for (const auto& t : s.terms()) {
        if (!out.empty()) out += " + ";
        out += to_string(t);
    }
    return out;
}

/// Sign of the polynomial evaluated at pi. Exact for constants; otherwise
/// interval evaluation with a precision ladder 64, 128, ..., 4096 bits.
inline int sign_at_pi(const PiSum& s) {
    const auto& terms = s.coefficients();
    if (terms.empty()) return 0;
    if (terms.size() == 1 && terms.begin()->first == 0) return sgn(terms.begin()->second);
    for (unsigned bits = kPiStartBits; bits <= kPiMaxBits; bits *= 2) {
        const PiEnclosure& pi = pi_enclosure(bits);
        BigRat lo = 0, hi = 0;
        for (const auto& [power, c] : terms) {
            BigRat at_lo = c * pow_ui(pi.lo, power);
            BigRat at_hi = c * pow_ui(pi.hi, power);
            if (c > 0) {
                lo += at_lo;
                hi += at_hi;
            } else {
                lo += at_hi;
                hi += at_lo;
            }
        }
        if (lo > 0) return 1;
        if (hi < 0) return -1;
    }
    fail(ErrorKind::PrecisionExhausted, "intervals failed to separate at " + std::to_string(kPiMaxBits) + " bits");
}

inline std::strong_ordering compare(const PiSum& x, const PiSum& y) {
    int s = sign_at_pi(x - y);
    return s < 0 ? std::strong_ordering::less : s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
}

/// Exact ordering of two SymReals as real numbers.
inline std::strong_ordering symreal_compare(const SymReal& x, const SymReal& y) {
    if (x.pi_power() == y.pi_power() || x.is_zero() || y.is_zero()) {
        // Same power (or a zero side): the coefficients decide, up to the
        // positive factor pi^m.
        if (x.pi_power() == y.pi_power()) {
            int c = cmp(x.coeff(), y.coeff());
            return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
        }
        int s = x.is_zero() ? -sgn(y.coeff()) : sgn(x.coeff());
        return s < 0 ? std::strong_ordering::less : s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
    }
    PiSum diff(x);
    diff -= PiSum(y);
    return compare(diff, PiSum());
}

inline std::strong_ordering operator<=>(const SymReal& x, const SymReal& y) { return symreal_compare(x, y); }

// ---------------------------------------------------------------------------
// unit ball volume

/// 1 * 3 * 5 * ... * n for odd n.
inline BigInt odd_double_factorial(unsigned n) {
    BigInt out;
    mpz_2fac_ui(out.get_mpz_t(), n);
    return out;
}

/// Volume of the unit ball in R^n: pi^(n/2) / Gamma(n/2 + 1).
/// Even n = 2k gives pi^k / k!; odd n = 2k+1 gives 2^(k+1) pi^k / n!!.
inline SymReal ball_volume(unsigned n) {
    const unsigned k = n / 2;
    if (n % 2 == 0) return SymReal(make_rat(1, factorial(k)), k);
    BigInt num = 1;
    num <<= k + 1;
    return SymReal(make_rat(num, odd_double_factorial(n)), k);
}

} // namespace lym
