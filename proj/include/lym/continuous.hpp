#pragma once

// The computable side of the real subspace lattice: multiflag coefficient
// tables and the sigma/tau bounds built from them.

#include <map>

#include "lym/coefficients.hpp"
#include "lym/error.hpp"

namespace lym {

enum class ContinuousMode { decomposition, chain };

constexpr std::string_view to_string(ContinuousMode m) noexcept {
    return m == ContinuousMode::decomposition ? "decomposition" : "chain";
}

struct ContinuousBound {
    unsigned n = 0;
    unsigned r = 0;
    ChainParams params;
    ContinuousMode mode = ContinuousMode::decomposition;
    /// sigma (decompositions) or tau (chains)
    std::uint64_t m = 0;
    std::map<Composition, SymReal> coefficient_table;
    /// Selected coefficients, descending.
    std::vector<SymReal> chosen;
    PiSum bound;
};

/// Decompositions use positive compositions of n into r parts; r-chains use
/// r+1 positive parts. The bound is the sum of the sigma (resp. tau) largest.
inline ContinuousBound continuous_bound(unsigned n, unsigned r, const ChainParams& params, ContinuousMode mode) {
    params.validate();
    if (params.r() != r)
        fail(ErrorKind::ParamMismatch, "got " + std::to_string(params.r()) + " chain parameters for r = " + std::to_string(r));
    const unsigned parts = mode == ContinuousMode::decomposition ? r : r + 1;
    if (parts > n)
        fail(ErrorKind::Infeasible, "no composition of " + std::to_string(n) + " into " + std::to_string(parts) +
                                        " positive parts");
    ContinuousBound out;
    out.n = n;
    out.r = r;
    out.params = params;
    out.mode = mode;
    const SigmaTau st = sigma_tau(params);
    out.m = mode == ContinuousMode::decomposition ? st.sigma : st.tau;

    std::vector<SymReal> values;
    for (const auto& a : compositions(n, parts, 1)) {
        SymReal c = multiflag_coefficient(n, a);
        values.push_back(c);
        out.coefficient_table.emplace(a, std::move(c));
    }
    auto largest = bound_sum_largest(std::move(values), out.m, SymRealGreater{});
    out.bound = std::move(largest.sum);
    out.chosen = std::move(largest.chosen);
    return out;
}

} // namespace lym
