#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "zpbrace/brace.hpp"

namespace zpbrace {

// Product form of a torsion algebra: b on M/Ann(M) with values in
// M.M = Z/p^t, presented as a symmetric matrix mod p^t.
struct TorsionForm {
    int t = 0;
    GramMatrix gram; // gram.ctx.N == t

    static TorsionForm make(const PAdicCtx& ctx, const std::vector<std::vector<long long>>& rows) {
        TorsionForm f;
        f.t = ctx.N;
        f.gram = GramMatrix::from_rows(ctx, rows);
        return f;
    }

    static TorsionForm from_gram(GramMatrix g) {
        TorsionForm f;
        f.t = g.ctx.N;
        f.gram = std::move(g);
        return f;
    }

    int quotient_rank() const { return gram.n; }

    // Valuation of the content ideal: the form's values generate
    // p^v Z/p^t. Surjectivity onto Z/p^t means v = 0; it is flagged here,
    // not enforced.
    int content_valuation() const {
        int v = t;
        for (const auto& e : gram.entries) v = std::min(v, gram.ctx.valuation_of(e));
        return v;
    }

    bool is_surjective() const { return content_valuation() == 0; }

    bool operator==(const TorsionForm& o) const { return t == o.t && gram == o.gram; }
};

// A free Z_p-lattice whose form reduces to the torsion form mod p^t.
struct Covering {
    GramMatrix gram_lift; // precision N >= t
    int t = 0;
};

// Jordan data truncated below scale t and canonicalized under the global
// unit-scaling action (simultaneous disc flip on all odd-rank blocks).
struct IsoclinismInvariant {
    std::vector<JordanBlock> blocks;

    bool operator==(const IsoclinismInvariant& o) const { return blocks == o.blocks; }
};

// Stem algebra (M/Ann) + Z/p^t with product through the form; elements are
// length (m+1) coordinate vectors mod p^t.
struct StemAlgebra {
    int quotient_rank = 0;
    int t = 0;
    TorsionForm form;

    int rank() const { return quotient_rank + 1; }

    Element element(const std::vector<long long>& coords) const {
        Element e;
        for (long long c : coords) e.coords.push_back(form.gram.ctx.reduce(BigInt(c)));
        if (static_cast<int>(e.coords.size()) != rank())
            throw std::invalid_argument("stem element: coordinate count mismatch");
        return e;
    }

    // (m1, x) . (m2, y) = (0, b(m1, m2)); 3-nilpotent by construction.
    Element dot(const Element& a, const Element& b) const {
        const PAdicCtx& ctx = form.gram.ctx;
        Element c;
        c.coords.assign(rank(), BigInt(0));
        BigInt s = 0;
        for (int i = 0; i < quotient_rank; ++i)
            for (int j = 0; j < quotient_rank; ++j)
                s += a.coords[i] * form.gram.at(i, j) * b.coords[j];
        c.coords[quotient_rank] = ctx.reduce(std::move(s));
        return c;
    }
};

inline StemAlgebra stem(const TorsionForm& f) {
    return StemAlgebra{f.quotient_rank(), f.t, f};
}

enum class LiftStrategy { plain, nondegenerate };

// Lift a torsion form to a covering at precision N. The plain strategy keeps
// the least nonnegative representatives; the nondegenerate strategy shifts
// by -p^h I (h >= t leaves the reduction untouched), increasing h until the
// lift has no radical directions at precision.
inline Covering lift(const TorsionForm& f, int N, LiftStrategy strategy, int h = -1) {
    if (N < f.t) throw PrecisionTooSmall("lift: precision below the torsion exponent");
    PAdicCtx up(f.gram.ctx.p, N);
    GramMatrix base(up, f.gram.n);
    base.entries.assign(f.gram.entries.begin(), f.gram.entries.end());
    if (strategy == LiftStrategy::plain) return {base, f.t};
    if (h < 0) h = f.t;
    if (h < f.t) throw std::invalid_argument("lift: nondegenerate shift needs h >= t");
    for (int hh = h; hh < N; ++hh) {
        GramMatrix cand = base;
        BigInt shift = up.pow_p(hh);
        for (int i = 0; i < cand.n; ++i) cand.at(i, i) = up.reduce(cand.at(i, i) - shift);
        if (jordan_split(cand).first.radical_rank_at_precision == 0) return {cand, f.t};
    }
    throw NoNondegenerateLift("lift: no shift below the precision is nondegenerate");
}

inline IsoclinismInvariant canonicalize_invariant(std::vector<JordanBlock> blocks) {
    auto key = [](const std::vector<JordanBlock>& bs) {
        std::vector<std::tuple<int, int, int>> k;
        for (const auto& b : bs)
            k.emplace_back(b.scale, b.rank, b.disc == SquareClass::square ? 0 : 1);
        return k;
    };
    std::vector<JordanBlock> flipped = blocks;
    for (auto& b : flipped)
        if (b.rank % 2 == 1)
            b.disc = b.disc == SquareClass::square ? SquareClass::nonsquare : SquareClass::square;
    if (key(flipped) < key(blocks)) return {flipped};
    return {blocks};
}

// Invariant read off a nondegenerate covering: blocks of scale < t, modulo
// the unit-scaling action.
inline IsoclinismInvariant invariant_from_covering(const Covering& c) {
    JordanInvariant inv = jordan_split(c.gram_lift).first;
    if (inv.radical_rank_at_precision > 0)
        throw InsufficientPrecision("invariant_from_covering: covering is degenerate at precision");
    return canonicalize_invariant(truncated_blocks(inv, c.t));
}

inline int default_invariant_precision(int t) { return t + 8; }

// Isoclinism invariant of a torsion form: plain lift when it is already
// nondegenerate at precision, otherwise the shifted lift with h = t.
inline IsoclinismInvariant isoclinism_invariant(const TorsionForm& f, int N = -1) {
    if (N < 0) N = default_invariant_precision(f.t);
    Covering plain = lift(f, N, LiftStrategy::plain);
    JordanInvariant inv = jordan_split(plain.gram_lift).first;
    if (inv.radical_rank_at_precision == 0)
        return canonicalize_invariant(truncated_blocks(inv, f.t));
    return invariant_from_covering(lift(f, N, LiftStrategy::nondegenerate, f.t));
}

inline bool isoclinic(const TorsionForm& f1, const TorsionForm& f2) {
    if (f1.gram.ctx.p != f2.gram.ctx.p)
        throw std::invalid_argument("isoclinic: prime mismatch");
    if (f1.t != f2.t) return false;
    return isoclinism_invariant(f1) == isoclinism_invariant(f2);
}

// Pad by a trivial-product algebra: r extra zero rows and columns. The
// invariant is unchanged since the padded directions lift to scales >= t.
inline TorsionForm direct_sum_trivial(const TorsionForm& f, int r) {
    if (r < 0) throw std::invalid_argument("direct_sum_trivial: negative padding");
    GramMatrix g(f.gram.ctx, f.gram.n + r);
    for (int i = 0; i < f.gram.n; ++i)
        for (int j = 0; j < f.gram.n; ++j) g.at(i, j) = f.gram.at(i, j);
    return TorsionForm::from_gram(g);
}

inline long long binomial(long long a, long long b) {
    if (b < 0 || a < 0 || b > a) return 0;
    long long r = 1;
    for (long long i = 1; i <= b; ++i) r = r * (a - b + i) / i;
    return r;
}

// Closed-form class count: sum over the number s of occupied scales of
// C(t,s) 2^{s-1} (C(n-1,s-1) + C(n/2-1,s-1)), the second term only when n
// is even.
inline long long count_isoclinism_formula(int n, int t) {
    if (n < 1 || t < 1) throw std::invalid_argument("count_isoclinism_formula: need n, t >= 1");
    long long total = 0;
    for (int s = 1; s <= t; ++s) {
        long long half = n % 2 == 0 ? binomial(n / 2 - 1, s - 1) : 0;
        total += binomial(t, s) * (1LL << (s - 1)) * (binomial(n - 1, s - 1) + half);
    }
    return total;
}

// Enumeration oracle: counts tuples (scale set, ordered ranks, disc vector)
// modulo the simultaneous flip of all odd-rank discs. Purely combinatorial.
inline long long count_isoclinism_enumerate(int n, int t, bool require_scale_zero = false) {
    if (n < 1 || t < 1) throw std::invalid_argument("count_isoclinism_enumerate: need n, t >= 1");
    long long total = 0;
    std::vector<int> parts;
    auto discs = [&]() {
        int s = static_cast<int>(parts.size());
        unsigned odd_mask = 0;
        for (int i = 0; i < s; ++i)
            if (parts[i] % 2 == 1) odd_mask |= 1u << i;
        for (unsigned dv = 0; dv < (1u << s); ++dv)
            if (dv <= (dv ^ odd_mask)) ++total; // orbit representative
    };
    auto compose = [&](auto&& self, int remaining, int slots) -> void {
        if (slots == 0) {
            if (remaining == 0) discs();
            return;
        }
        for (int take = 1; take + (slots - 1) <= remaining; ++take) {
            parts.push_back(take);
            self(self, remaining - take, slots - 1);
            parts.pop_back();
        }
    };
    for (unsigned mask = 1; mask < (1u << t); ++mask) {
        if (require_scale_zero && !(mask & 1u)) continue;
        int s = 0;
        for (unsigned m = mask; m; m >>= 1) s += static_cast<int>(m & 1u);
        compose(compose, n, s);
    }
    return total;
}

} // namespace zpbrace
