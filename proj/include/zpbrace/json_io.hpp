#pragma once

#include <json.hpp>

#include <limits>
#include <string>
#include <vector>

#include "zpbrace/brace.hpp"
#include "zpbrace/isoclinism.hpp"
#include "zpbrace/latform.hpp"

namespace zpbrace {

using nlohmann::json;

// Malformed or schema-violating input; the CLI maps this to exit code 2.
struct SchemaError : Error {
    using Error::Error;
};

namespace jio {

inline long long require_int(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number_integer())
        throw SchemaError(std::string("expected integer field \"") + key + "\"");
    return j[key].get<long long>();
}

inline BigInt parse_entry(const json& v) {
    if (v.is_number_integer()) return BigInt(v.get<long long>());
    if (v.is_string()) {
        try {
            return BigInt(v.get<std::string>());
        } catch (const std::exception&) {
            throw SchemaError("entry string is not a decimal integer");
        }
    }
    throw SchemaError("matrix entries must be integers or decimal strings");
}

// Residues within int64 range print as numbers, larger ones as strings.
inline json entry_to_json(const BigInt& x) {
    if (x <= std::numeric_limits<long long>::max()) return x.convert_to<long long>();
    return x.str();
}

inline std::vector<std::vector<BigInt>> parse_rows(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_array())
        throw SchemaError(std::string("expected array field \"") + key + "\"");
    std::vector<std::vector<BigInt>> rows;
    for (const auto& r : j[key]) {
        if (!r.is_array()) throw SchemaError("matrix rows must be arrays");
        std::vector<BigInt> row;
        for (const auto& v : r) row.push_back(parse_entry(v));
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw SchemaError("matrix must have at least one row");
    for (const auto& r : rows)
        if (r.size() != rows.size()) throw SchemaError("matrix must be square");
    return rows;
}

} // namespace jio

inline json to_json(const PAdicInt& x) {
    return json{{"residue", x.residue.str()}, {"p", x.ctx.p}, {"N", x.ctx.N}};
}

// {"p": int, "N": int, "entries": [[int, ...], ...]}
inline json to_json(const GramMatrix& g) {
    json rows = json::array();
    for (int i = 0; i < g.n; ++i) {
        json row = json::array();
        for (int j = 0; j < g.n; ++j) row.push_back(jio::entry_to_json(g.at(i, j)));
        rows.push_back(std::move(row));
    }
    return json{{"p", g.ctx.p}, {"N", g.ctx.N}, {"entries", rows}};
}

inline GramMatrix gram_from_json(const json& j, int default_precision = 8) {
    long long p = jio::require_int(j, "p");
    int N = j.contains("N") ? static_cast<int>(jio::require_int(j, "N")) : default_precision;
    PAdicCtx ctx(p, N);
    return GramMatrix::from_rows(ctx, jio::parse_rows(j, "entries"));
}

// {"p": int, "t": int, "entries": [[int, ...], ...]}
inline json to_json(const TorsionForm& f) {
    json j = to_json(f.gram);
    j.erase("N");
    j["t"] = f.t;
    return j;
}

inline TorsionForm torsion_form_from_json(const json& j) {
    long long p = jio::require_int(j, "p");
    int t = static_cast<int>(jio::require_int(j, "t"));
    if (t < 1) throw SchemaError("torsion exponent t must be >= 1");
    PAdicCtx ctx(p, t);
    return TorsionForm::from_gram(GramMatrix::from_rows(ctx, jio::parse_rows(j, "entries")));
}

inline json blocks_to_json(const std::vector<JordanBlock>& blocks) {
    json arr = json::array();
    for (const auto& b : blocks)
        arr.push_back(json{{"scale", b.scale}, {"rank", b.rank}, {"disc", to_string(b.disc)}});
    return arr;
}

inline json to_json(const JordanInvariant& inv) {
    return json{{"blocks", blocks_to_json(inv.blocks)},
                {"radical_rank_at_precision", inv.radical_rank_at_precision}};
}

inline json to_json(const IsoclinismInvariant& inv) { return blocks_to_json(inv.blocks); }

inline json to_json(const Matrix& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows; ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols; ++j) row.push_back(jio::entry_to_json(m.at(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline json to_json(const CongruenceWitness& w) {
    return json{{"transform", to_json(w.transform)}, {"epsilon", w.epsilon}};
}

inline json to_json(const Element& e) {
    json arr = json::array();
    for (const auto& c : e.coords) arr.push_back(jio::entry_to_json(c));
    return arr;
}

inline json to_json(const VerificationReport& r) {
    json cex = json::array();
    for (const auto& [family, triple] : r.counterexamples)
        cex.push_back(json{{"family", family},
                           {"triple", json::array({to_json(triple[0]), to_json(triple[1]),
                                                   to_json(triple[2])})}});
    return json{{"brace_distributivity", r.brace_distributivity},
                {"dot_commutative_associative", r.dot_commutative_associative},
                {"three_nilpotent", r.three_nilpotent},
                {"commutator_identity", r.commutator_identity},
                {"circle_group", r.circle_group},
                {"all_pass", r.all_pass()},
                {"counterexamples", cex},
                {"scope", r.scope},
                {"seed", r.seed},
                {"triples_checked", r.triples_checked}};
}

} // namespace zpbrace
