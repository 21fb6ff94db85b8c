#pragma once

// JSON encodings. Rationals and big integers are exact strings; small
// structural integers (n, r, ranks, counts, divisor values) are JSON numbers.
// Decoding failures throw MalformedInput naming the offending field path.

#include <string>

#include <json.hpp>

#include "lym/continuous.hpp"
#include "lym/error.hpp"
#include "lym/exact.hpp"
#include "lym/extremal.hpp"
#include "lym/family.hpp"
#include "lym/inequality.hpp"
#include "lym/lattice.hpp"

namespace lym {

using Json = nlohmann::ordered_json;

namespace detail {

[[noreturn]] inline void bad_field(const std::string& path, const std::string& what) {
    fail(ErrorKind::MalformedInput, path + ": " + what);
}

inline const Json& field(const Json& j, const char* key, const std::string& path) {
    if (!j.is_object()) bad_field(path, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) bad_field(path + "." + key, "missing");
    return *it;
}

inline std::uint64_t as_uint(const Json& j, const std::string& path) {
    if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0))
        bad_field(path, "expected a non-negative integer");
    return j.get<std::uint64_t>();
}

} // namespace detail

// ---------------------------------------------------------------------------
// numbers

inline Json to_json(const BigRat& x) { return to_string(x); }
inline Json to_json(const BigInt& x) { return x.get_str(); }

inline Json to_json(const SymReal& x) {
    Json j;
    j["coeff"] = to_string(x.coeff());
    j["pi_power"] = x.pi_power();
    return j;
}

inline Json to_json(const PiSum& s) {
    Json terms = Json::array();
    for (const auto& t : s.terms()) terms.push_back(to_json(t));
    return terms;
}

inline BigRat rational_from_json(const Json& j, const std::string& path) {
    if (j.is_number_integer()) return BigRat(BigInt(std::to_string(j.get<std::int64_t>())));
    if (!j.is_string()) detail::bad_field(path, "expected a rational string \"p/q\"");
    try {
        return parse_rational(j.get<std::string>());
    } catch (const Error& e) {
        detail::bad_field(path, e.what());
    }
}

inline SymReal symreal_from_json(const Json& j, const std::string& path) {
    const BigRat c = rational_from_json(detail::field(j, "coeff", path), path + ".coeff");
    const auto p = detail::as_uint(detail::field(j, "pi_power", path), path + ".pi_power");
    return SymReal(c, static_cast<unsigned>(p));
}

// ---------------------------------------------------------------------------
// lattices and elements

inline Json to_json(const LatticeCtx& ctx) {
    Json j;
    j["kind"] = std::string(to_string(ctx.kind()));
    j["n"] = ctx.n();
    if (ctx.kind() == LatticeKind::subspace) j["q"] = ctx.q();
    return j;
}

inline LatticeCtx lattice_from_json(const Json& j, const std::string& path) {
    const Json& kind = detail::field(j, "kind", path);
    if (!kind.is_string()) detail::bad_field(path + ".kind", "expected a string");
    const std::string k = kind.get<std::string>();
    const std::uint64_t n = detail::as_uint(detail::field(j, "n", path), path + ".n");
    const bool has_q = j.contains("q");
    try {
        if (k == "boolean" || k == "divisor") {
            if (has_q) detail::bad_field(path + ".q", "only allowed for subspace lattices");
            return k == "boolean" ? LatticeCtx::boolean(static_cast<unsigned>(n)) : LatticeCtx::divisor(n);
        }
        if (k == "subspace") {
            const auto q = detail::as_uint(detail::field(j, "q", path), path + ".q");
            return LatticeCtx::subspace(static_cast<unsigned>(q), static_cast<unsigned>(n));
        }
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::MalformedInput) throw;
        detail::bad_field(path, e.what());
    }
    detail::bad_field(path + ".kind", "unknown lattice kind \"" + k + "\"");
}

inline Json to_json(const LatticeCtx& ctx, const LatticeElem& e) {
    switch (ctx.kind()) {
    case LatticeKind::boolean: return subset_members(std::get<BoolSet>(e));
    case LatticeKind::subspace: {
        Json rows = Json::array();
        for (const auto& row : subspace_rows(ctx, std::get<Subspace>(e))) rows.push_back(row);
        return rows;
    }
    case LatticeKind::divisor: return divisor_value(ctx, std::get<DivisorElem>(e));
    }
    return nullptr;
}

inline LatticeElem elem_from_json(const LatticeCtx& ctx, const Json& j, const std::string& path) {
    try {
        switch (ctx.kind()) {
        case LatticeKind::boolean: {
            if (!j.is_array()) detail::bad_field(path, "expected an array of members");
            std::vector<unsigned> members;
            for (std::size_t i = 0; i < j.size(); ++i)
                members.push_back(static_cast<unsigned>(detail::as_uint(j[i], path + "[" + std::to_string(i) + "]")));
            return make_subset(ctx, members);
        }
        case LatticeKind::subspace: {
            if (!j.is_array()) detail::bad_field(path, "expected an array of basis rows");
            gf::Matrix rows;
            for (std::size_t i = 0; i < j.size(); ++i) {
                const std::string rp = path + "[" + std::to_string(i) + "]";
                if (!j[i].is_array()) detail::bad_field(rp, "expected a row array");
                std::vector<std::uint32_t> row;
                for (std::size_t c = 0; c < j[i].size(); ++c)
                    row.push_back(static_cast<std::uint32_t>(detail::as_uint(j[i][c], rp + "[" + std::to_string(c) + "]")));
                rows.push_back(std::move(row));
            }
            return make_subspace(ctx, rows);
        }
        case LatticeKind::divisor: return make_divisor(ctx, detail::as_uint(j, path));
        }
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::MalformedInput) throw;
        detail::bad_field(path, e.what());
    }
    detail::bad_field(path, "unknown lattice");
}

// ---------------------------------------------------------------------------
// families

inline Json to_json(const Family& f) {
    Json j;
    j["lattice"] = to_json(f.ctx());
    j["mode"] = std::string(to_string(f.mode()));
    j["r"] = f.r();
    j["strict"] = f.strict();
    Json tuples = Json::array();
    for (const auto& t : f.tuples()) {
        Json row = Json::array();
        for (const auto& e : t.elems) row.push_back(to_json(f.ctx(), e));
        tuples.push_back(std::move(row));
    }
    j["tuples"] = std::move(tuples);
    return j;
}

inline Mode mode_from_string(const std::string& s, const std::string& path) {
    if (s == "decomposition") return Mode::decomposition;
    if (s == "multichain") return Mode::multichain;
    detail::bad_field(path, "unknown mode \"" + s + "\"");
}

inline Family family_from_json(const Json& j) {
    const LatticeCtx ctx = lattice_from_json(detail::field(j, "lattice", "$"), "$.lattice");
    const Json& mode = detail::field(j, "mode", "$");
    if (!mode.is_string()) detail::bad_field("$.mode", "expected a string");
    const Mode m = mode_from_string(mode.get<std::string>(), "$.mode");
    const auto r = detail::as_uint(detail::field(j, "r", "$"), "$.r");
    if (r < 1) detail::bad_field("$.r", "must be positive");
    bool strict = false;
    if (j.contains("strict")) {
        if (!j["strict"].is_boolean()) detail::bad_field("$.strict", "expected a boolean");
        strict = j["strict"].get<bool>();
    }
    const Json& tuples = detail::field(j, "tuples", "$");
    if (!tuples.is_array()) detail::bad_field("$.tuples", "expected an array");
    Family out(ctx, m, static_cast<unsigned>(r), strict);
    for (std::size_t i = 0; i < tuples.size(); ++i) {
        const std::string tp = "$.tuples[" + std::to_string(i) + "]";
        if (!tuples[i].is_array()) detail::bad_field(tp, "expected an array of elements");
        if (tuples[i].size() != r)
            detail::bad_field(tp, "has " + std::to_string(tuples[i].size()) + " components, expected " + std::to_string(r));
        FamilyTuple t;
        for (std::size_t k = 0; k < tuples[i].size(); ++k)
            t.elems.push_back(elem_from_json(ctx, tuples[i][k], tp + "[" + std::to_string(k) + "]"));
        if (!is_valid_tuple(ctx, m, t.elems, strict))
            detail::bad_field(tp, std::string("not a valid ") + std::string(to_string(m)));
        out.insert_unchecked(std::move(t));
    }
    return out;
}

// ---------------------------------------------------------------------------
// reports

inline Json to_json(const LymReport& rep) {
    Json j;
    j["mode"] = std::string(to_string(rep.mode));
    j["r"] = rep.r;
    j["family_size"] = rep.family_size;
    j["sum"] = to_json(rep.sum);
    if (rep.premises_checked()) {
        Json premises = Json::array();
        for (bool ok : rep.premise_ok) premises.push_back(ok);
        j["premises"] = std::move(premises);
        j["sigma"] = rep.sigma_tau.sigma;
        j["tau"] = rep.sigma_tau.tau;
        j["bound"] = rep.bound;
        j["slack"] = to_json(rep.slack);
        j["cardinality_bound"] = to_json(rep.cardinality_bound);
        Json chosen = Json::array();
        for (const auto& c : rep.chosen_coefficients) chosen.push_back(to_json(c));
        j["chosen_coefficients"] = std::move(chosen);
        j["verdict"] = std::string(to_string(assess(rep)));
    }
    Json strata = Json::object();
    for (const auto& [type, row] : rep.strata) {
        Json s;
        s["count"] = row.count;
        s["coefficient"] = to_json(row.coefficient);
        s["contribution"] = to_json(row.contribution);
        strata[to_string(type)] = std::move(s);
    }
    j["strata"] = std::move(strata);
    return j;
}

inline Json to_json(const ContinuousBound& b) {
    Json j;
    j["lattice"] = "continuous";
    j["n"] = b.n;
    j["r"] = b.r;
    j["t"] = b.params.t;
    j["mode"] = std::string(to_string(b.mode));
    j[b.mode == ContinuousMode::decomposition ? "sigma" : "tau"] = b.m;
    Json table = Json::object();
    for (const auto& [a, c] : b.coefficient_table) table[to_string(a)] = to_json(c);
    j["coefficients"] = std::move(table);
    Json chosen = Json::array();
    for (const auto& c : b.chosen) chosen.push_back(to_json(c));
    j["chosen"] = std::move(chosen);
    j["bound"] = to_json(b.bound);
    return j;
}

/// No timing data, so deterministic runs are byte-stable.
inline Json to_json(const SearchResult& res) {
    Json j;
    j["max_size"] = res.max_size;
    j["theorem_bound"] = to_json(res.theorem_bound);
    j["proved_optimal"] = res.proved_optimal;
    j["nodes_explored"] = res.nodes_explored;
    j["witness"] = to_json(res.witness);
    return j;
}

} // namespace lym
