#pragma once

// Exact LYM sums over the three discrete lattices, premise checks for the
// t_k-chain-free hypotheses, and the sigma/tau bounds they are compared to.

#include <cstdint>
#include <map>
#include <vector>

#include "lym/chains.hpp"
#include "lym/coefficients.hpp"
#include "lym/error.hpp"
#include "lym/family.hpp"

namespace lym {

/// Number of tuples of the given type among all tuples of the lattice:
/// the denominator of that stratum in the LYM sum. `type` has r parts; for
/// multichains the implicit final part is appended here.
inline BigInt stratum_coefficient(const LatticeCtx& ctx, Mode mode, const Composition& type) {
    const unsigned n = ctx.top_rank();
    const Composition full = mode == Mode::multichain ? with_final_part(ctx, type) : type;
    switch (ctx.kind()) {
    case LatticeKind::boolean: return multinomial(n, full);
    case LatticeKind::subspace:
        return mode == Mode::decomposition ? q_decomposition_count(n, full, ctx.q()) : q_multinomial(n, full, ctx.q());
    case LatticeKind::divisor: return divisor_decomposition_count(ctx.n(), full);
    }
    return 0;
}

/// Coefficients over every composition of the top rank into r parts
/// (decompositions) or r+1 parts (multichains), zero parts allowed.
inline std::vector<BigInt> coefficient_multiset(const LatticeCtx& ctx, Mode mode, unsigned r) {
    const unsigned parts = mode == Mode::decomposition ? r : r + 1;
    std::vector<BigInt> out;
    for (const auto& a : compositions(ctx.top_rank(), parts)) {
        Composition type = a;
        if (mode == Mode::multichain) type.parts.pop_back();
        out.push_back(stratum_coefficient(ctx, mode, type));
    }
    return out;
}

struct StratumRow {
    std::uint64_t count = 0;
    BigInt coefficient;
    BigRat contribution;
};

struct LymReport {
    Mode mode = Mode::decomposition;
    unsigned r = 0;
    std::uint64_t family_size = 0;
    /// Per component: projection is t_k-chain free. Empty until checked.
    std::vector<bool> premise_ok;
    BigRat sum{0};
    /// sigma for decompositions, tau for multichains; 0 until checked.
    std::uint64_t bound = 0;
    SigmaTau sigma_tau;
    BigRat slack{0};
    BigInt cardinality_bound{0};
    /// Coefficients summed into the cardinality bound, descending.
    std::vector<BigInt> chosen_coefficients;
    std::map<Composition, StratumRow> strata;

    bool premises_checked() const noexcept { return !premise_ok.empty(); }
    bool premises_hold() const {
        for (bool ok : premise_ok)
            if (!ok) return false;
        return premises_checked();
    }
};

/// Exact sum over strata of |stratum| / coefficient.
inline LymReport lym_sum(const Family& family) {
    LymReport report;
    report.mode = family.mode();
    report.r = family.r();
    report.family_size = family.size();
    for (const auto& [type, tuples] : stratify(family)) {
        StratumRow row;
        row.count = tuples.size();
        row.coefficient = stratum_coefficient(family.ctx(), family.mode(), type);
        row.contribution = make_rat(BigInt(static_cast<unsigned long>(row.count)), row.coefficient);
        report.sum += row.contribution;
        report.strata.emplace(type, std::move(row));
    }
    return report;
}

/// Fills premises, the sigma/tau bound and the cardinality bound. Purely
/// descriptive: a failed premise is reported, never thrown.
inline LymReport verify_theorem(const Family& family, const ChainParams& params) {
    params.validate();
    if (params.r() != family.r())
        fail(ErrorKind::ParamMismatch, "got " + std::to_string(params.r()) + " chain parameters for r = " +
                                           std::to_string(family.r()));
    LymReport report = lym_sum(family);
    for (unsigned k = 0; k < family.r(); ++k)
        report.premise_ok.push_back(is_t_chain_free(family.ctx(), project(family, k), params.t[k]));
    report.sigma_tau = sigma_tau(params);
    report.bound = family.mode() == Mode::decomposition ? report.sigma_tau.sigma : report.sigma_tau.tau;
    report.slack = BigRat(BigInt(static_cast<unsigned long>(report.bound))) - report.sum;
    auto largest = bound_sum_largest(coefficient_multiset(family.ctx(), family.mode(), family.r()), report.bound);
    report.cardinality_bound = largest.sum;
    report.chosen_coefficients = std::move(largest.chosen);
    return report;
}

enum class Verdict {
    confirmed,      // premises hold, both inequalities hold
    premise_failed, // nothing is asserted
    violated,       // premises hold but an inequality fails
};

/// The assertion layer over a checked report.
inline Verdict assess(const LymReport& report) {
    if (!report.premises_checked()) fail(ErrorKind::InvalidArgument, "report has no premise data");
    if (!report.premises_hold()) return Verdict::premise_failed;
    if (report.slack < 0) return Verdict::violated;
    if (BigInt(static_cast<unsigned long>(report.family_size)) > report.cardinality_bound) return Verdict::violated;
    return Verdict::confirmed;
}

constexpr std::string_view to_string(Verdict v) noexcept {
    switch (v) {
    case Verdict::confirmed: return "confirmed";
    case Verdict::premise_failed: return "premise_failed";
    case Verdict::violated: return "violated";
    }
    return "?";
}

// ---------------------------------------------------------------------------

struct LemmaDResult {
    bool hypothesis_holds = false;
    bool conclusion_holds = false;
    friend bool operator==(const LemmaDResult&, const LemmaDResult&) = default;
};

/// For c_1 >= ... >= c_n > 0 and 0 <= x_i <= c_i: hypothesis is
/// sum x_i > c_1 + ... + c_t, conclusion is sum x_i / c_i > t.
inline LemmaDResult lemma_d_check(const std::vector<BigRat>& c, const std::vector<BigRat>& x, unsigned t) {
    if (c.size() != x.size()) fail(ErrorKind::ShapeMismatch, "c and x differ in length");
    if (c.empty()) fail(ErrorKind::ShapeMismatch, "empty instance");
    if (t < 1 || t > c.size()) fail(ErrorKind::ShapeMismatch, "t must lie in 1..n");
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i] <= 0) fail(ErrorKind::ShapeMismatch, "c must be positive");
        if (i > 0 && c[i] > c[i - 1]) fail(ErrorKind::ShapeMismatch, "c must be non-increasing");
        if (x[i] < 0 || x[i] > c[i]) fail(ErrorKind::ShapeMismatch, "x_i must lie in [0, c_i]");
    }
    BigRat total_x = 0, top_c = 0, ratio = 0;
    for (std::size_t i = 0; i < c.size(); ++i) {
        total_x += x[i];
        ratio += x[i] / c[i];
        if (i < t) top_c += c[i];
    }
    return {total_x > top_c, ratio > BigRat(static_cast<long>(t))};
}

} // namespace lym
