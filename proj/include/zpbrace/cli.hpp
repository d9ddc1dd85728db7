#pragma once

#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <vector>

#include "zpbrace/json_io.hpp"
#include "zpbrace/oracle.hpp"

namespace zpbrace {

// One JSON document in (stdin where a payload is needed), one JSON document
// out, newline terminated. Exit codes: 0 ok, 2 validation, 3 precision or
// budget trouble (including an oracle mismatch).
namespace cli {

struct Options {
    int precision = -1; // -1: per-command default
    bool oracle = false;
    bool enumerate = false;
    bool min_scale_zero = false;
    long long seed = 0;
};

inline json read_payload(std::istream& in) {
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw SchemaError(std::string("malformed JSON payload: ") + e.what());
    }
    if (!j.is_object()) throw SchemaError("payload must be a JSON object");
    return j;
}

inline json cmd_jordan(const json& payload, const Options& opt) {
    GramMatrix g = gram_from_json(payload, opt.precision > 0 ? opt.precision : 8);
    auto [inv, wit] = jordan_split(g);
    json out = to_json(inv);
    out["witness"] = to_json(wit);
    if (opt.oracle) {
        bool ok = g.n <= 6 && g.ctx.N <= 6 && oracle::bf_jordan(g) == inv;
        out["cross_check"] = g.n <= 6 && g.ctx.N <= 6 ? (ok ? "ok" : "mismatch") : "skipped";
    }
    return out;
}

inline json cmd_disc(const json& payload, const Options& opt) {
    GramMatrix g = gram_from_json(payload, opt.precision > 0 ? opt.precision : 8);
    Discriminant d = discriminant(g);
    json out{{"valuation", d.valuation},
             {"at_precision", d.valuation >= g.ctx.N},
             {"disc", d.disc ? json(to_string(*d.disc)) : json(nullptr)},
             {"det", to_json(PAdicInt{g.ctx, g.as_matrix().det_mod()})}};
    if (opt.oracle) {
        // the determinant factors through the Jordan data
        JordanInvariant inv = jordan_split(g).first;
        bool ok;
        if (inv.radical_rank_at_precision > 0) {
            ok = d.valuation >= g.ctx.N;
        } else {
            int v = 0;
            SquareClass c = SquareClass::square;
            for (const auto& b : inv.blocks) {
                v += b.scale * b.rank;
                if (b.disc == SquareClass::nonsquare) c = combine(c, SquareClass::nonsquare);
            }
            ok = v >= g.ctx.N ? d.valuation >= g.ctx.N : (v == d.valuation && c == *d.disc);
        }
        out["cross_check"] = ok ? "ok" : "mismatch";
    }
    return out;
}

inline json cmd_normal_form(const json& payload, const Options& opt) {
    GramMatrix g = gram_from_json(payload, opt.precision > 0 ? opt.precision : 8);
    return to_json(unimodular_normal_form(g));
}

inline json cmd_iso(const json& payload, const Options& opt) {
    if (!payload.contains("theta1") || !payload.contains("theta2"))
        throw SchemaError("iso payload needs \"theta1\" and \"theta2\"");
    int defN = opt.precision > 0 ? opt.precision : 8;
    GramMatrix t1 = gram_from_json(payload["theta1"], defN);
    GramMatrix t2 = gram_from_json(payload["theta2"], defN);
    BraceAlgebra a1 = BraceAlgebra::from_theta_unchecked(t1, AlgebraMode::torsion_free);
    BraceAlgebra a2 = BraceAlgebra::from_theta_unchecked(t2, AlgebraMode::torsion_free);
    auto found = isomorphic(a1, a2);
    json out;
    out["epsilon"] = found ? json(found->epsilon) : json(nullptr);
    out["witness"] = found ? to_json(found->witness) : json(nullptr);
    if (opt.oracle) {
        try {
            bool bf = oracle::bf_congruent(t1, t2, true);
            out["cross_check"] = bf == found.has_value() ? "ok" : "mismatch";
        } catch (const BudgetExceeded&) {
            out["cross_check"] = "skipped";
        }
    }
    return out;
}

inline json cmd_count_unimodular(int n, int d) {
    return json{{"n", n}, {"d", d}, {"classes", count_unimodular_classes(n, d)}};
}

inline json cmd_verify(const json& payload, const Options& opt) {
    if (!payload.contains("mode") || !payload["mode"].is_string())
        throw SchemaError("verify payload needs a \"mode\" of torsion_free or torsion");
    std::string mode_s = payload["mode"].get<std::string>();
    AlgebraMode mode;
    int N;
    long long p = jio::require_int(payload, "p");
    if (mode_s == "torsion_free") {
        mode = AlgebraMode::torsion_free;
        N = payload.contains("N") ? static_cast<int>(jio::require_int(payload, "N"))
                                  : (opt.precision > 0 ? opt.precision : 8);
    } else if (mode_s == "torsion") {
        mode = AlgebraMode::torsion;
        N = static_cast<int>(jio::require_int(payload, "k"));
    } else {
        throw SchemaError("verify mode must be torsion_free or torsion");
    }
    PAdicCtx ctx(p, N);
    GramMatrix theta = GramMatrix::from_rows(ctx, jio::parse_rows(payload, "theta"));
    BraceAlgebra alg = BraceAlgebra::from_theta(theta, mode);

    VerifyScope scope = VerifyScope::sampled(500, static_cast<std::uint64_t>(opt.seed));
    if (payload.contains("scope")) {
        const json& s = payload["scope"];
        std::string type = s.contains("type") && s["type"].is_string()
                               ? s["type"].get<std::string>()
                               : "sampled";
        if (type == "exhaustive") {
            int level = s.contains("level") ? static_cast<int>(jio::require_int(s, "level"))
                                            : (mode == AlgebraMode::torsion ? N : 1);
            scope = VerifyScope::exhaustive(level);
        } else if (type == "sampled") {
            std::uint64_t count = s.contains("count")
                                      ? static_cast<std::uint64_t>(jio::require_int(s, "count"))
                                      : 500;
            std::uint64_t seed = s.contains("seed")
                                     ? static_cast<std::uint64_t>(jio::require_int(s, "seed"))
                                     : static_cast<std::uint64_t>(opt.seed);
            scope = VerifyScope::sampled(count, seed);
        } else {
            throw SchemaError("scope type must be exhaustive or sampled");
        }
    }
    return to_json(alg.verify_brace(scope));
}

inline json cmd_stem(const json& payload) {
    TorsionForm f = torsion_form_from_json(payload);
    StemAlgebra s = stem(f);
    json gram = json::array();
    for (int i = 0; i < f.gram.n; ++i) {
        json row = json::array();
        for (int j = 0; j < f.gram.n; ++j) row.push_back(jio::entry_to_json(f.gram.at(i, j)));
        gram.push_back(std::move(row));
    }
    return json{{"p", f.gram.ctx.p},
                {"t", s.t},
                {"quotient_rank", s.quotient_rank},
                {"rank", s.rank()},
                {"surjective", f.is_surjective()},
                {"content_valuation", f.content_valuation()},
                {"gram", gram}};
}

inline json cmd_lift(const json& payload, const Options& opt) {
    TorsionForm f = torsion_form_from_json(payload);
    int N = opt.precision > 0 ? opt.precision : default_invariant_precision(f.t);
    LiftStrategy strategy = LiftStrategy::plain;
    int h = -1;
    if (payload.contains("strategy")) {
        std::string s = payload["strategy"].get<std::string>();
        if (s == "nondegenerate")
            strategy = LiftStrategy::nondegenerate;
        else if (s != "plain")
            throw SchemaError("lift strategy must be plain or nondegenerate");
    }
    if (payload.contains("h")) h = static_cast<int>(jio::require_int(payload, "h"));
    Covering c = lift(f, N, strategy, h);
    JordanInvariant inv = jordan_split(c.gram_lift).first;
    json out = to_json(inv);
    out["gram_lift"] = to_json(c.gram_lift);
    out["t"] = c.t;
    return out;
}

inline json cmd_invariant(const json& payload, const Options& opt) {
    TorsionForm f = torsion_form_from_json(payload);
    int N = opt.precision > 0 ? opt.precision : default_invariant_precision(f.t);
    IsoclinismInvariant inv = isoclinism_invariant(f, N);
    return json{{"p", f.gram.ctx.p}, {"t", f.t}, {"invariant", to_json(inv)}};
}

inline json cmd_isoclinic(const json& payload) {
    if (!payload.contains("form1") || !payload.contains("form2"))
        throw SchemaError("isoclinic payload needs \"form1\" and \"form2\"");
    TorsionForm f1 = torsion_form_from_json(payload["form1"]);
    TorsionForm f2 = torsion_form_from_json(payload["form2"]);
    return json{{"isoclinic", isoclinic(f1, f2)}};
}

inline json cmd_count(int n, int t, const Options& opt, bool& mismatch) {
    json out{{"n", n}, {"t", t}, {"formula", count_isoclinism_formula(n, t)}};
    if (opt.enumerate || opt.oracle)
        out["enumerate"] = count_isoclinism_enumerate(n, t);
    if (opt.min_scale_zero)
        out["enumerate_min_scale_zero"] = count_isoclinism_enumerate(n, t, true);
    if (opt.oracle) {
        bool ok = out["formula"] == out["enumerate"];
        out["cross_check"] = ok ? "ok" : "mismatch";
        mismatch = mismatch || !ok;
    }
    return out;
}

inline int emit_error(std::ostream& out, const std::string& code, const std::string& message,
                      int exit_code) {
    out << json{{"error", {{"code", code}, {"message", message}}}}.dump() << "\n";
    return exit_code;
}

inline int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out) {
    CLI::App app{"classification tools for symmetric bilinear forms over Z_p and the "
                 "commutative 3-nilpotent braces they define"};
    app.name("zpbrace");
    app.fallthrough();
    Options opt;
    app.add_option("--precision", opt.precision, "working precision exponent N");
    app.add_flag("--oracle", opt.oracle, "cross-check the answer against a brute-force oracle");
    app.add_option("--seed", opt.seed, "seed for sampled verification");
    app.add_flag("--enumerate", opt.enumerate, "count: also run the enumeration oracle");
    app.add_flag("--min-scale-zero", opt.min_scale_zero,
                 "count: also report the count restricted to splittings using scale 0");

    auto* sc_jordan = app.add_subcommand("jordan", "Jordan splitting of a Gram matrix (stdin)");
    auto* sc_disc = app.add_subcommand("disc", "discriminant of a Gram matrix (stdin)");
    auto* sc_nf = app.add_subcommand("normal-form", "unimodular normal form (stdin)");
    auto* sc_iso = app.add_subcommand("iso", "isomorphism of two defining matrices (stdin)");
    auto* sc_cu = app.add_subcommand("count-unimodular", "unimodular isomorphism class count");
    int cu_n = 0, cu_d = 0;
    sc_cu->add_option("n", cu_n, "algebra rank")->required();
    sc_cu->add_option("d", cu_d, "annihilator rank")->required();
    auto* sc_verify = app.add_subcommand("verify", "check the brace axioms (stdin)");
    auto* sc_stem = app.add_subcommand("stem", "stem algebra of a torsion form (stdin)");
    auto* sc_lift = app.add_subcommand("lift", "lift a torsion form to a covering (stdin)");
    auto* sc_inv = app.add_subcommand("invariant", "isoclinism invariant (stdin)");
    auto* sc_isoc = app.add_subcommand("isoclinic", "isoclinism of two torsion forms (stdin)");
    auto* sc_count = app.add_subcommand("count", "isoclinism class count");
    int count_n = 0, count_t = 0;
    sc_count->add_option("n", count_n, "torsion rank")->required();
    sc_count->add_option("t", count_t, "exponent of the cyclic product module")->required();
    app.require_subcommand(1);

    std::vector<const char*> argv;
    argv.push_back("zpbrace");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help() << std::flush;
        return 0;
    } catch (const CLI::ParseError& e) {
        return emit_error(out, "usage", e.what(), 2);
    }

    bool mismatch = false;
    try {
        json result;
        if (sc_jordan->parsed()) result = cmd_jordan(read_payload(in), opt);
        else if (sc_disc->parsed()) result = cmd_disc(read_payload(in), opt);
        else if (sc_nf->parsed()) result = cmd_normal_form(read_payload(in), opt);
        else if (sc_iso->parsed()) result = cmd_iso(read_payload(in), opt);
        else if (sc_cu->parsed()) result = cmd_count_unimodular(cu_n, cu_d);
        else if (sc_verify->parsed()) result = cmd_verify(read_payload(in), opt);
        else if (sc_stem->parsed()) result = cmd_stem(read_payload(in));
        else if (sc_lift->parsed()) result = cmd_lift(read_payload(in), opt);
        else if (sc_inv->parsed()) result = cmd_invariant(read_payload(in), opt);
        else if (sc_isoc->parsed()) result = cmd_isoclinic(read_payload(in));
        else if (sc_count->parsed()) result = cmd_count(count_n, count_t, opt, mismatch);
        if (result.contains("cross_check") && result["cross_check"] == "mismatch") mismatch = true;
        out << result.dump() << "\n";
        return mismatch ? 3 : 0;
    } catch (const SchemaError& e) {
        return emit_error(out, "schema", e.what(), 2);
    } catch (const InsufficientPrecision& e) {
        return emit_error(out, "insufficient_precision", e.what(), 3);
    } catch (const BudgetExceeded& e) {
        return emit_error(out, "budget_exceeded", e.what(), 3);
    } catch (const NoNondegenerateLift& e) {
        return emit_error(out, "no_nondegenerate_lift", e.what(), 3);
    } catch (const PrecisionTooSmall& e) {
        return emit_error(out, "precision_too_small", e.what(), 2);
    } catch (const NotSymmetric& e) {
        return emit_error(out, "not_symmetric", e.what(), 2);
    } catch (const NotUnimodular& e) {
        return emit_error(out, "not_unimodular", e.what(), 2);
    } catch (const RankDeficient& e) {
        return emit_error(out, "rank_deficient", e.what(), 2);
    } catch (const UnitKernel& e) {
        return emit_error(out, "unit_kernel", e.what(), 2);
    } catch (const Error& e) {
        return emit_error(out, "error", e.what(), 2);
    } catch (const std::exception& e) {
        return emit_error(out, "invalid_argument", e.what(), 2);
    }
}

} // namespace cli
} // namespace zpbrace
