#pragma once

// The `lym` command line. run() is callable in-process; tools/lym.cpp is a
// thin main around it.
//
// Exit codes: 0 ok, 2 malformed input, 3 a premise fails, 4 an inequality
// is violated.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lym/lym.hpp"

namespace lym::cli {

enum ExitCode : int { kOk = 0, kMalformed = 2, kPremiseFailed = 3, kViolated = 4 };

enum class Format { json, csv, human };

struct LatticeOptions {
    std::string kind;
    std::uint64_t n = 0;
    std::optional<unsigned> q;
};

struct RunConfig {
    Format format = Format::json;
    bool approx = false;
    LatticeOptions lattice;
    std::string mode = "decomposition";
    unsigned r = 0;
    std::vector<unsigned> t;
    std::vector<unsigned> parts;
    std::string in_path;
    std::string out_path;
    bool counts = false;
    double budget = 300.0;
    unsigned workers = 1;
    std::vector<std::string> c_values;
    std::vector<std::string> x_values;
    unsigned lemma_t = 0;
};

namespace detail {

inline std::string approx_string(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

inline double approx(const BigRat& x) { return x.get_d(); }

inline LatticeCtx make_ctx(const LatticeOptions& o) {
    if (o.kind == "continuous") fail(ErrorKind::MalformedInput, "--lattice: continuous is not a discrete lattice here");
    if (o.q && o.kind != "subspace") fail(ErrorKind::MalformedInput, "--q: only allowed with --lattice subspace");
    try {
        if (o.kind == "boolean") return LatticeCtx::boolean(static_cast<unsigned>(o.n));
        if (o.kind == "divisor") return LatticeCtx::divisor(o.n);
        if (o.kind == "subspace") {
            if (!o.q) fail(ErrorKind::MalformedInput, "--q: required with --lattice subspace");
            return LatticeCtx::subspace(*o.q, static_cast<unsigned>(o.n));
        }
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::MalformedInput) throw;
        fail(ErrorKind::MalformedInput, std::string("--n: ") + e.what());
    }
    fail(ErrorKind::MalformedInput, "--lattice: unknown kind \"" + o.kind + "\"");
}

inline Mode parse_mode(const std::string& s) {
    if (s == "decomposition") return Mode::decomposition;
    if (s == "multichain") return Mode::multichain;
    fail(ErrorKind::MalformedInput, "--mode: expected decomposition or multichain, got \"" + s + "\"");
}

inline ChainParams parse_params(const std::vector<unsigned>& t, std::optional<unsigned> r) {
    if (t.empty()) fail(ErrorKind::MalformedInput, "--t: required");
    for (unsigned v : t)
        if (v == 0) fail(ErrorKind::MalformedInput, "--t: entries must be positive");
    if (r && t.size() != *r)
        fail(ErrorKind::MalformedInput,
             "--t: has " + std::to_string(t.size()) + " entries but --r is " + std::to_string(*r));
    return ChainParams(t);
}

inline Json read_json(const std::string& path, const char* option) {
    if (path.empty()) fail(ErrorKind::MalformedInput, std::string(option) + ": required");
    std::ifstream file;
    std::istream* in = &std::cin;
    if (path != "-") {
        file.open(path);
        if (!file) fail(ErrorKind::MalformedInput, std::string(option) + ": cannot open \"" + path + "\"");
        in = &file;
    }
    try {
        return Json::parse(*in);
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorKind::MalformedInput, std::string(option) + ": invalid JSON: " + e.what());
    }
}

inline void emit_json(std::ostream& out, const Json& j) { out << j.dump(2) << '\n'; }

inline std::string csv_header_strata() { return "composition,count,coefficient,contribution\n"; }

} // namespace detail

// ---------------------------------------------------------------------------
// subcommands

inline int cmd_coef(const RunConfig& cfg, std::ostream& out) {
    const Composition a{cfg.parts};
    if (cfg.parts.empty()) fail(ErrorKind::MalformedInput, "--parts: required");
    if (cfg.lattice.kind == "continuous") {
        if (cfg.lattice.q) fail(ErrorKind::MalformedInput, "--q: only allowed with --lattice subspace");
        SymReal c;
        try {
            c = multiflag_coefficient(static_cast<unsigned>(cfg.lattice.n), a);
        } catch (const Error& e) {
            fail(ErrorKind::MalformedInput, std::string("--parts: ") + e.what());
        }
        switch (cfg.format) {
        case Format::json: {
            Json j = to_json(c);
            if (cfg.approx) j["approx"] = c.approx();
            out << j.dump() << '\n';
            break;
        }
        case Format::csv:
            out << "coeff,pi_power" << (cfg.approx ? ",approx" : "") << '\n'
                << to_string(c.coeff()) << ',' << c.pi_power();
            if (cfg.approx) out << ',' << detail::approx_string(c.approx());
            out << '\n';
            break;
        case Format::human:
            out << "[" << cfg.lattice.n << "; " << to_string(a) << "]_R = " << to_string(c);
            if (cfg.approx) out << " ~ " << detail::approx_string(c.approx());
            out << '\n';
            break;
        }
        return kOk;
    }
    const LatticeCtx ctx = detail::make_ctx(cfg.lattice);
    const Mode mode = detail::parse_mode(cfg.mode);
    if (a.total() != ctx.top_rank())
        fail(ErrorKind::MalformedInput, "--parts: sum " + std::to_string(a.total()) + " differs from the top rank " +
                                            std::to_string(ctx.top_rank()));
    Composition type = a;
    if (mode == Mode::multichain) {
        if (type.parts.size() < 2) fail(ErrorKind::MalformedInput, "--parts: a multichain type needs at least 2 parts");
        type.parts.pop_back();
    }
    const BigInt c = stratum_coefficient(ctx, mode, type);
    switch (cfg.format) {
    case Format::json: out << to_json(c).dump() << '\n'; break;
    case Format::csv: out << "coefficient\n" << c.get_str() << '\n'; break;
    case Format::human: out << describe(ctx) << " " << to_string(mode) << " " << to_string(a) << ": " << c.get_str() << '\n'; break;
    }
    return kOk;
}

inline int cmd_bound(const RunConfig& cfg, std::ostream& out) {
    if (cfg.r < 1) fail(ErrorKind::MalformedInput, "--r: required and positive");
    const ChainParams params = detail::parse_params(cfg.t, cfg.r);
    if (cfg.lattice.kind == "continuous") {
        if (cfg.lattice.q) fail(ErrorKind::MalformedInput, "--q: only allowed with --lattice subspace");
        ContinuousMode mode;
        if (cfg.mode == "decomposition") mode = ContinuousMode::decomposition;
        else if (cfg.mode == "chain" || cfg.mode == "multichain") mode = ContinuousMode::chain;
        else fail(ErrorKind::MalformedInput, "--mode: expected decomposition or chain");
        ContinuousBound b;
        try {
            b = continuous_bound(static_cast<unsigned>(cfg.lattice.n), cfg.r, params, mode);
        } catch (const Error& e) {
            fail(ErrorKind::MalformedInput, std::string("--n: ") + e.what());
        }
        switch (cfg.format) {
        case Format::json: {
            Json j = to_json(b);
            if (cfg.approx) j["bound_approx"] = b.bound.approx();
            detail::emit_json(out, j);
            break;
        }
        case Format::csv:
            out << "composition,coeff,pi_power\n";
            for (const auto& [a, c] : b.coefficient_table)
                out << '"' << to_string(a) << "\"," << to_string(c.coeff()) << ',' << c.pi_power() << '\n';
            break;
        case Format::human:
            out << "continuous n=" << b.n << " r=" << b.r << " " << to_string(b.mode) << "\n"
                << (b.mode == ContinuousMode::decomposition ? "sigma = " : "tau = ") << b.m << "\n"
                << "bound = " << to_string(b.bound);
            if (cfg.approx) out << " ~ " << detail::approx_string(b.bound.approx());
            out << '\n';
            break;
        }
        return kOk;
    }
    const LatticeCtx ctx = detail::make_ctx(cfg.lattice);
    const Mode mode = detail::parse_mode(cfg.mode);
    const SigmaTau st = sigma_tau(params);
    const std::uint64_t m = mode == Mode::decomposition ? st.sigma : st.tau;
    const unsigned parts = mode == Mode::decomposition ? cfg.r : cfg.r + 1;
    const auto types = compositions(ctx.top_rank(), parts);
    std::vector<BigInt> coeffs;
    for (const auto& a : types) {
        Composition type = a;
        if (mode == Mode::multichain) type.parts.pop_back();
        coeffs.push_back(stratum_coefficient(ctx, mode, type));
    }
    const auto largest = bound_sum_largest(coeffs, m);
    switch (cfg.format) {
    case Format::json: {
        Json j;
        j["lattice"] = to_json(ctx);
        j["mode"] = std::string(to_string(mode));
        j["r"] = cfg.r;
        j["t"] = params.t;
        j["sigma"] = st.sigma;
        j["tau"] = st.tau;
        j["bound"] = m;
        j["cardinality_bound"] = to_json(largest.sum);
        Json chosen = Json::array();
        for (const auto& c : largest.chosen) chosen.push_back(to_json(c));
        j["chosen_coefficients"] = std::move(chosen);
        Json table = Json::object();
        for (std::size_t i = 0; i < types.size(); ++i) table[to_string(types[i])] = to_json(coeffs[i]);
        j["coefficients"] = std::move(table);
        detail::emit_json(out, j);
        break;
    }
    case Format::csv:
        out << "composition,coefficient\n";
        for (std::size_t i = 0; i < types.size(); ++i) out << '"' << to_string(types[i]) << "\"," << coeffs[i].get_str() << '\n';
        break;
    case Format::human:
        out << describe(ctx) << " " << to_string(mode) << " r=" << cfg.r << "\n"
            << "sigma = " << st.sigma << ", tau = " << st.tau << "\n"
            << "cardinality bound = " << largest.sum.get_str() << '\n';
        break;
    }
    return kOk;
}

inline int cmd_verify(const RunConfig& cfg, std::ostream& out) {
    const Family family = family_from_json(detail::read_json(cfg.in_path, "--in"));
    const ChainParams params = detail::parse_params(cfg.t, family.r());
    const LymReport report = verify_theorem(family, params);
    const Verdict verdict = assess(report);
    switch (cfg.format) {
    case Format::json: {
        Json j = to_json(report);
        if (cfg.approx) j["sum_approx"] = detail::approx(report.sum);
        detail::emit_json(out, j);
        break;
    }
    case Format::csv:
        out << detail::csv_header_strata();
        for (const auto& [type, row] : report.strata)
            out << '"' << to_string(type) << "\"," << row.count << ',' << row.coefficient.get_str() << ','
                << to_string(row.contribution) << '\n';
        break;
    case Format::human:
        out << describe(family.ctx()) << " " << to_string(family.mode()) << " family of " << report.family_size
            << " tuples\n";
        for (unsigned k = 0; k < report.premise_ok.size(); ++k)
            out << "component " << k + 1 << ": " << (report.premise_ok[k] ? "" : "not ") << params.t[k]
                << "-chain free\n";
        out << "sum = " << to_string(report.sum) << " (bound " << report.bound << ", slack " << to_string(report.slack)
            << ")\n"
            << "size " << report.family_size << " vs cardinality bound " << report.cardinality_bound.get_str() << '\n'
            << "verdict: " << to_string(verdict) << '\n';
        break;
    }
    switch (verdict) {
    case Verdict::confirmed: return kOk;
    case Verdict::premise_failed: return kPremiseFailed;
    case Verdict::violated: return kViolated;
    }
    return kOk;
}

inline int cmd_enumerate(const RunConfig& cfg, std::ostream& out) {
    const LatticeCtx ctx = detail::make_ctx(cfg.lattice);
    const Mode mode = detail::parse_mode(cfg.mode);
    if (cfg.r < 1) fail(ErrorKind::MalformedInput, "--r: required and positive");
    Family family = [&] {
        try {
            return family_of_all(ctx, mode, cfg.r);
        } catch (const Error& e) {
            fail(ErrorKind::MalformedInput, std::string("--r: ") + e.what());
        }
    }();
    if (!cfg.counts) {
        switch (cfg.format) {
        case Format::json: detail::emit_json(out, to_json(family)); break;
        case Format::csv:
        case Format::human:
            for (const auto& t : family.tuples()) {
                for (std::size_t k = 0; k < t.elems.size(); ++k)
                    out << (k ? (cfg.format == Format::csv ? "," : " ") : "") << '"'
                        << to_json(ctx, t.elems[k]).dump() << '"';
                out << '\n';
            }
            break;
        }
        return kOk;
    }
    const LymReport report = lym_sum(family);
    switch (cfg.format) {
    case Format::json: {
        Json j;
        j["lattice"] = to_json(ctx);
        j["mode"] = std::string(to_string(mode));
        j["r"] = cfg.r;
        j["total"] = report.family_size;
        Json strata = Json::object();
        for (const auto& [type, row] : report.strata) {
            Json s;
            s["count"] = row.count;
            s["coefficient"] = to_json(row.coefficient);
            strata[to_string(type)] = std::move(s);
        }
        j["strata"] = std::move(strata);
        detail::emit_json(out, j);
        break;
    }
    case Format::csv:
        out << "composition,count,coefficient\n";
        for (const auto& [type, row] : report.strata)
            out << '"' << to_string(type) << "\"," << row.count << ',' << row.coefficient.get_str() << '\n';
        break;
    case Format::human:
        out << describe(ctx) << " " << to_string(mode) << " r=" << cfg.r << ": " << report.family_size << " tuples\n";
        for (const auto& [type, row] : report.strata) out << "  " << to_string(type) << ": " << row.count << '\n';
        break;
    }
    return kOk;
}

/// Input: {"lattice": {...}, "elements": [elem, ...]}.
inline int cmd_mirsky(const RunConfig& cfg, std::ostream& out) {
    const Json in = detail::read_json(cfg.in_path, "--in");
    const LatticeCtx ctx = lattice_from_json(lym::detail::field(in, "lattice", "$"), "$.lattice");
    const Json& arr = lym::detail::field(in, "elements", "$");
    if (!arr.is_array()) lym::detail::bad_field("$.elements", "expected an array");
    std::vector<LatticeElem> elems;
    for (std::size_t i = 0; i < arr.size(); ++i)
        elems.push_back(elem_from_json(ctx, arr[i], "$.elements[" + std::to_string(i) + "]"));
    const auto blocks = mirsky_decomposition(ctx, elems);
    const auto chain = longest_chain(ctx, elems);
    switch (cfg.format) {
    case Format::json: {
        Json j;
        j["lattice"] = to_json(ctx);
        j["height"] = chain.height;
        Json bj = Json::array();
        for (const auto& b : blocks) {
            Json row = Json::array();
            for (const auto& e : b) row.push_back(to_json(ctx, e));
            bj.push_back(std::move(row));
        }
        j["antichains"] = std::move(bj);
        Json cj = Json::array();
        for (const auto& e : chain.witness) cj.push_back(to_json(ctx, e));
        j["longest_chain"] = std::move(cj);
        detail::emit_json(out, j);
        break;
    }
    case Format::csv:
        out << "level,element\n";
        for (std::size_t i = 0; i < blocks.size(); ++i)
            for (const auto& e : blocks[i]) out << i + 1 << ",\"" << to_json(ctx, e).dump() << "\"\n";
        break;
    case Format::human:
        out << "height " << chain.height << '\n';
        for (std::size_t i = 0; i < blocks.size(); ++i) {
            out << "level " << i + 1 << ':';
            for (const auto& e : blocks[i]) out << ' ' << to_json(ctx, e).dump();
            out << '\n';
        }
        break;
    }
    return kOk;
}

inline int cmd_search(const RunConfig& cfg, std::ostream& out) {
    const LatticeCtx ctx = detail::make_ctx(cfg.lattice);
    if (cfg.mode != "decomposition") fail(ErrorKind::MalformedInput, "--mode: search supports decompositions only");
    if (cfg.r < 1) fail(ErrorKind::MalformedInput, "--r: required and positive");
    const ChainParams params = detail::parse_params(cfg.t, cfg.r);
    if (cfg.budget <= 0) fail(ErrorKind::MalformedInput, "--budget: must be positive");
    if (cfg.workers < 1) fail(ErrorKind::MalformedInput, "--workers: must be positive");
    SearchResult res = [&] {
        try {
            return max_family(ctx, cfg.r, params, SearchOptions{cfg.budget, cfg.workers});
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::TooLarge) fail(ErrorKind::MalformedInput, std::string("--n: ") + e.what());
            throw;
        }
    }();
    if (!cfg.out_path.empty()) {
        std::ofstream file(cfg.out_path);
        if (!file) fail(ErrorKind::MalformedInput, "--out: cannot write \"" + cfg.out_path + "\"");
        file << to_json(res.witness).dump(2) << '\n';
    }
    switch (cfg.format) {
    case Format::json: detail::emit_json(out, to_json(res)); break;
    case Format::csv:
        out << "max_size,theorem_bound,proved_optimal,nodes_explored\n"
            << res.max_size << ',' << res.theorem_bound.get_str() << ',' << (res.proved_optimal ? "true" : "false") << ','
            << res.nodes_explored << '\n';
        break;
    case Format::human:
        out << describe(ctx) << " r=" << cfg.r << " t=";
        for (std::size_t i = 0; i < params.t.size(); ++i) out << (i ? "," : "") << params.t[i];
        out << "\nmax size " << res.max_size << (res.proved_optimal ? " (optimal)" : " (budget exhausted, lower bound)")
            << "\ntheorem bound " << res.theorem_bound.get_str() << "\nnodes " << res.nodes_explored << '\n';
        break;
    }
    if (BigInt(static_cast<unsigned long>(res.max_size)) > res.theorem_bound) return kViolated;
    return kOk;
}

inline int cmd_lemma_d(const RunConfig& cfg, std::ostream& out) {
    std::vector<BigRat> c, x;
    for (std::size_t i = 0; i < cfg.c_values.size(); ++i) {
        try {
            c.push_back(parse_rational(cfg.c_values[i]));
        } catch (const Error& e) {
            fail(ErrorKind::MalformedInput, "--c[" + std::to_string(i) + "]: " + e.what());
        }
    }
    for (std::size_t i = 0; i < cfg.x_values.size(); ++i) {
        try {
            x.push_back(parse_rational(cfg.x_values[i]));
        } catch (const Error& e) {
            fail(ErrorKind::MalformedInput, "--x[" + std::to_string(i) + "]: " + e.what());
        }
    }
    LemmaDResult res;
    try {
        res = lemma_d_check(c, x, cfg.lemma_t);
    } catch (const Error& e) {
        fail(ErrorKind::MalformedInput, std::string("--c/--x/--t: ") + e.what());
    }
    const bool holds = !res.hypothesis_holds || res.conclusion_holds;
    switch (cfg.format) {
    case Format::json: {
        Json j;
        j["hypothesis"] = res.hypothesis_holds;
        j["conclusion"] = res.conclusion_holds;
        j["implication_holds"] = holds;
        detail::emit_json(out, j);
        break;
    }
    case Format::csv:
        out << "hypothesis,conclusion,implication_holds\n"
            << std::boolalpha << res.hypothesis_holds << ',' << res.conclusion_holds << ',' << holds << '\n';
        break;
    case Format::human:
        out << "hypothesis " << (res.hypothesis_holds ? "holds" : "fails") << ", conclusion "
            << (res.conclusion_holds ? "holds" : "fails") << '\n';
        break;
    }
    return holds ? kOk : kViolated;
}

// ---------------------------------------------------------------------------

/// Parses arguments (argv[0] is the program name) and runs one subcommand.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    cfg.budget = default_time_budget();
    CLI::App app{"Exact LYM-type inequalities over finite lattices", "lym"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string format = "json";
    app.add_option("--format", format, "json, csv or human")->check(CLI::IsMember({"json", "csv", "human"}));
    app.add_flag("--approx", cfg.approx, "Add floating-point display values");

    auto lattice_opts = [&](CLI::App* sub, bool need_n = true) {
        sub->add_option("--lattice", cfg.lattice.kind, "boolean, subspace, divisor or continuous")->required();
        auto* n = sub->add_option("--n", cfg.lattice.n, "Ground size, dimension, or the integer");
        if (need_n) n->required();
        sub->add_option("--q", cfg.lattice.q, "Field size (subspace lattices)");
        sub->add_option("--mode", cfg.mode, "decomposition or multichain (chain for continuous bounds)");
    };

    auto* coef = app.add_subcommand("coef", "Coefficient for one composition");
    lattice_opts(coef);
    coef->add_option("--parts", cfg.parts, "Composition, comma separated")->delimiter(',')->required();

    auto* bound = app.add_subcommand("bound", "sigma/tau and the cardinality bound");
    lattice_opts(bound);
    bound->add_option("--r", cfg.r, "Tuple length")->required();
    bound->add_option("--t", cfg.t, "Chain parameters, comma separated")->delimiter(',')->required();

    auto* verify = app.add_subcommand("verify", "Check a family file against the inequalities");
    verify->add_option("--in", cfg.in_path, "Family JSON file, - for stdin")->required();
    verify->add_option("--t", cfg.t, "Chain parameters, comma separated")->delimiter(',')->required();

    auto* enumerate = app.add_subcommand("enumerate", "All tuples, or per-stratum counts");
    lattice_opts(enumerate);
    enumerate->add_option("--r", cfg.r, "Tuple length")->required();
    enumerate->add_flag("--counts", cfg.counts, "Per-stratum counts instead of tuples");

    auto* mirsky = app.add_subcommand("mirsky", "Split an element set into antichains");
    mirsky->add_option("--in", cfg.in_path, "JSON {lattice, elements}, - for stdin")->required();

    auto* search = app.add_subcommand("search", "Exact maximum chain-constrained family");
    lattice_opts(search);
    search->add_option("--r", cfg.r, "Tuple length")->required();
    search->add_option("--t", cfg.t, "Chain parameters, comma separated")->delimiter(',')->required();
    search->add_option("--budget", cfg.budget, "Time budget in seconds");
    search->add_option("--workers", cfg.workers, "Worker threads (1 is deterministic)");
    search->add_option("--out", cfg.out_path, "Also write the witness family here");

    auto* lemma = app.add_subcommand("lemma-d", "Check one instance of the weighted-sum lemma");
    lemma->add_option("--c", cfg.c_values, "Non-increasing positive rationals")->delimiter(',')->required();
    lemma->add_option("--x", cfg.x_values, "Rationals with 0 <= x_i <= c_i")->delimiter(',')->required();
    lemma->add_option("--t", cfg.lemma_t, "Threshold index")->required();

    try {
        std::vector<std::string> args;
        for (int i = argc - 1; i >= 1; --i) args.emplace_back(argv[i]);
        app.parse(std::move(args));
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kMalformed;
    }
    cfg.format = format == "csv" ? Format::csv : format == "human" ? Format::human : Format::json;

    try {
        if (coef->parsed()) return cmd_coef(cfg, out);
        if (bound->parsed()) return cmd_bound(cfg, out);
        if (verify->parsed()) return cmd_verify(cfg, out);
        if (enumerate->parsed()) return cmd_enumerate(cfg, out);
        if (mirsky->parsed()) return cmd_mirsky(cfg, out);
        if (search->parsed()) return cmd_search(cfg, out);
        if (lemma->parsed()) return cmd_lemma_d(cfg, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kMalformed;
    }
    return kMalformed;
}

} // namespace lym::cli
