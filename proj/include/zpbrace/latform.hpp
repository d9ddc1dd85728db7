#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "zpbrace/matrix.hpp"

namespace zpbrace {

// Symmetric bilinear form on Z_p^n as a Gram matrix of residues mod p^N.
struct GramMatrix {
    PAdicCtx ctx;
    int n = 0;
    std::vector<BigInt> entries; // row major, symmetric

    GramMatrix() = default;
    GramMatrix(PAdicCtx c, int rank) : ctx(std::move(c)), n(rank), entries(rank * rank) {}

    BigInt& at(int i, int j) { return entries[i * n + j]; }
    const BigInt& at(int i, int j) const { return entries[i * n + j]; }
    PAdicInt element(int i, int j) const { return {ctx, at(i, j)}; }

    template <typename T>
    static GramMatrix from_rows(const PAdicCtx& c, const std::vector<std::vector<T>>& rows) {
        GramMatrix g(c, static_cast<int>(rows.size()));
        for (int i = 0; i < g.n; ++i) {
            if (static_cast<int>(rows[i].size()) != g.n)
                throw NotSymmetric("gram matrix must be square");
            for (int j = 0; j < g.n; ++j) g.at(i, j) = c.reduce(BigInt(rows[i][j]));
        }
        for (int i = 0; i < g.n; ++i)
            for (int j = i + 1; j < g.n; ++j)
                if (g.at(i, j) != g.at(j, i))
                    throw NotSymmetric("gram matrix must be symmetric");
        return g;
    }

    template <typename T>
    static GramMatrix diagonal(const PAdicCtx& c, const std::vector<T>& d) {
        GramMatrix g(c, static_cast<int>(d.size()));
        for (int i = 0; i < g.n; ++i) g.at(i, i) = c.reduce(BigInt(d[i]));
        return g;
    }

    static GramMatrix from_rows(const PAdicCtx& c,
                                std::initializer_list<std::vector<long long>> rows) {
        return from_rows(c, std::vector<std::vector<long long>>(rows));
    }

    static GramMatrix diagonal(const PAdicCtx& c, std::initializer_list<long long> d) {
        return diagonal(c, std::vector<long long>(d));
    }

    static GramMatrix identity(const PAdicCtx& c, int rank) {
        return diagonal(c, std::vector<BigInt>(rank, BigInt(1)));
    }

    GramMatrix scaled(const BigInt& c) const {
        GramMatrix g = *this;
        for (auto& x : g.entries) x = ctx.reduce(x * c);
        return g;
    }

    Matrix as_matrix() const {
        Matrix m(ctx, n, n);
        m.a = entries;
        return m;
    }

    bool operator==(const GramMatrix& o) const {
        return ctx.p == o.ctx.p && ctx.N == o.ctx.N && n == o.n && entries == o.entries;
    }
};

struct JordanBlock {
    int scale = 0;
    int rank = 0;
    SquareClass disc = SquareClass::square;

    bool operator==(const JordanBlock& o) const {
        return scale == o.scale && rank == o.rank && disc == o.disc;
    }
};

// Jordan data: blocks sorted by strictly increasing scale < N, plus the rank
// of the space indistinguishable from the radical at the working precision.
struct JordanInvariant {
    std::vector<JordanBlock> blocks;
    int radical_rank_at_precision = 0;

    bool operator==(const JordanInvariant& o) const {
        return blocks == o.blocks && radical_rank_at_precision == o.radical_rank_at_precision;
    }
};

struct CongruenceWitness {
    Matrix transform;
    long long epsilon = 1;
};

namespace detail {

// Symmetric congruence reduction T G T^t -> canonical Jordan form, tracking T.
struct JordanWorker {
    PAdicCtx ctx;
    int n;
    std::vector<BigInt> M;
    Matrix T;
    std::vector<int> diag_val;
    std::vector<SquareClass> diag_cls;
    int processed = 0;

    explicit JordanWorker(const GramMatrix& g)
        : ctx(g.ctx), n(g.n), M(g.entries), T(Matrix::identity(g.ctx, g.n)),
          diag_val(g.n, 0), diag_cls(g.n, SquareClass::square) {}

    BigInt& m(int i, int j) { return M[i * n + j]; }

    // e_dst <- e_dst + c e_src on both sides of the form.
    void axpy(int dst, int src, const BigInt& c) {
        for (int j = 0; j < n; ++j) m(dst, j) = ctx.reduce(m(dst, j) + c * m(src, j));
        for (int i = 0; i < n; ++i) m(i, dst) = ctx.reduce(m(i, dst) + c * m(i, src));
        for (int j = 0; j < n; ++j) T.at(dst, j) = ctx.reduce(T.at(dst, j) + c * T.at(src, j));
    }

    void swap_basis(int i, int j) {
        if (i == j) return;
        for (int c = 0; c < n; ++c) std::swap(m(i, c), m(j, c));
        for (int r = 0; r < n; ++r) std::swap(m(r, i), m(r, j));
        for (int c = 0; c < n; ++c) std::swap(T.at(i, c), T.at(j, c));
    }

    void scale_basis(int i, const BigInt& c) {
        for (int j = 0; j < n; ++j) m(i, j) = ctx.reduce(m(i, j) * c);
        for (int r = 0; r < n; ++r) m(r, i) = ctx.reduce(m(r, i) * c);
        for (int j = 0; j < n; ++j) T.at(i, j) = ctx.reduce(T.at(i, j) * c);
    }

    // (e_i, e_j) <- (x e_i + y e_j, -y e_i + x e_j), applied simultaneously.
    void rotate(int i, int j, const BigInt& x, const BigInt& y) {
        for (int c = 0; c < n; ++c) {
            BigInt ri = m(i, c), rj = m(j, c);
            m(i, c) = ctx.reduce(x * ri + y * rj);
            m(j, c) = ctx.reduce(x * rj - y * ri);
        }
        for (int r = 0; r < n; ++r) {
            BigInt ci = m(r, i), cj = m(r, j);
            m(r, i) = ctx.reduce(x * ci + y * cj);
            m(r, j) = ctx.reduce(x * cj - y * ci);
        }
        for (int c = 0; c < n; ++c) {
            BigInt ri = T.at(i, c), rj = T.at(j, c);
            T.at(i, c) = ctx.reduce(x * ri + y * rj);
            T.at(j, c) = ctx.reduce(x * rj - y * ri);
        }
    }

    void diagonalize() {
        int k = 0;
        while (k < n) {
            int best_v = ctx.N, bi = -1, bj = -1;
            for (int i = k; i < n; ++i)
                for (int j = k; j < n; ++j) {
                    int v = ctx.valuation_of(m(i, j));
                    if (v < best_v) {
                        best_v = v;
                        bi = i;
                        bj = j;
                    }
                }
            if (bi < 0) break; // remainder is radical at precision
            if (bi != bj) {
                // Fold onto the diagonal. e_i + e_j can cancel when a diagonal
                // entry shares the minimal valuation; e_i - e_j then cannot.
                BigInt cand = ctx.reduce(m(bi, bi) + 2 * m(bi, bj) + m(bj, bj));
                BigInt s = ctx.valuation_of(cand) == best_v ? BigInt(1) : BigInt(-1);
                axpy(bi, bj, s);
            }
            swap_basis(bi, k);
            int v = best_v;
            BigInt pm = ctx.pow_p(ctx.N - v);
            BigInt u = ctx.unit_part(m(k, k), v) % pm;
            BigInt uinv = nt::mod_inverse(u, pm);
            BigInt pv = ctx.pow_p(v);
            for (int r = k + 1; r < n; ++r) {
                if (m(r, k) == 0) continue;
                BigInt c = m(r, k) / pv % pm * uinv % pm;
                if (c != 0) axpy(r, k, ctx.modulus - c);
            }
            diag_val[k] = v;
            ++k;
        }
        processed = k;
    }

    void normalize_units() {
        for (int i = 0; i < processed; ++i) {
            int v = diag_val[i];
            int prec = ctx.N - v;
            BigInt pm = ctx.pow_p(prec);
            BigInt u = ctx.unit_part(m(i, i), v) % pm;
            bool sq = nt::is_square_mod_p(u, ctx.p);
            BigInt c2 = nt::mod_inverse(u, pm);
            if (!sq) c2 = c2 * ctx.q % pm;
            BigInt c = nt::hensel_sqrt(c2, ctx.p, prec);
            scale_basis(i, c);
            diag_cls[i] = sq ? SquareClass::square : SquareClass::nonsquare;
        }
    }

    // Turn diag(p^v q, p^v q) into diag(p^v, p^v): the rotation rows (x, y),
    // (-y, x) work whenever q (x^2 + y^2) = 1 at the block precision.
    void cancel_nonsquare_pairs() {
        int start = 0;
        while (start < processed) {
            int end = start;
            while (end < processed && diag_val[end] == diag_val[start]) ++end;
            int prec = ctx.N - diag_val[start];
            std::vector<int> qpos;
            for (int i = start; i < end; ++i)
                if (diag_cls[i] == SquareClass::nonsquare) qpos.push_back(i);
            for (size_t a = 0; a + 1 < qpos.size(); a += 2) {
                BigInt pm = ctx.pow_p(prec);
                BigInt qinv = nt::mod_inverse(BigInt(ctx.q) % pm, pm);
                long long y = 0;
                for (long long cand = 1; cand < ctx.p; ++cand) {
                    BigInt rem = (qinv - cand * cand) % ctx.p;
                    if (rem < 0) rem += ctx.p;
                    if (rem != 0 && nt::is_square_mod_p(rem, ctx.p)) {
                        y = cand;
                        break;
                    }
                }
                BigInt x = nt::hensel_sqrt(ctx.reduce(qinv - y * y) % pm, ctx.p, prec);
                rotate(qpos[a], qpos[a + 1], x, y);
                diag_cls[qpos[a]] = SquareClass::square;
                diag_cls[qpos[a + 1]] = SquareClass::square;
            }
            if (qpos.size() % 2 == 1 && qpos.back() != end - 1) {
                swap_basis(qpos.back(), end - 1);
                std::swap(diag_cls[qpos.back()], diag_cls[end - 1]);
            }
            start = end;
        }
    }

    JordanInvariant invariant() const {
        JordanInvariant inv;
        inv.radical_rank_at_precision = n - processed;
        int start = 0;
        while (start < processed) {
            int end = start;
            while (end < processed && diag_val[end] == diag_val[start]) ++end;
            SquareClass disc = SquareClass::square;
            for (int i = start; i < end; ++i) disc = combine(disc, diag_cls[i]);
            inv.blocks.push_back({diag_val[start], end - start, disc});
            start = end;
        }
        return inv;
    }

    void run() {
        diagonalize();
        normalize_units();
        cancel_nonsquare_pairs();
    }
};

} // namespace detail

// The canonical matrix determined by a Jordan invariant: one scaled identity
// block per scale, a q in the last slot of blocks with nonsquare
// discriminant, zeros for the radical tail.
inline GramMatrix jordan_form_matrix(const PAdicCtx& ctx, const JordanInvariant& inv) {
    std::vector<BigInt> d;
    for (const auto& b : inv.blocks) {
        BigInt pv = ctx.pow_p(b.scale);
        for (int i = 0; i + 1 < b.rank; ++i) d.push_back(pv);
        d.push_back(b.disc == SquareClass::square ? pv : ctx.reduce(pv * ctx.q));
    }
    for (int i = 0; i < inv.radical_rank_at_precision; ++i) d.push_back(0);
    return GramMatrix::diagonal(ctx, d);
}

// Jordan splitting of a symmetric form, with a unimodular witness T such
// that T G T^t equals jordan_form_matrix(invariant) exactly mod p^N.
inline std::pair<JordanInvariant, CongruenceWitness> jordan_split(const GramMatrix& g) {
    detail::JordanWorker w(g);
    w.run();
    return {w.invariant(), CongruenceWitness{w.T, 1}};
}

struct Discriminant {
    int valuation = 0; // ctx.N means the determinant vanishes at precision
    std::optional<SquareClass> disc;
};

inline Discriminant discriminant(const GramMatrix& g) {
    BigInt d = g.as_matrix().det_mod();
    int v = g.ctx.valuation_of(d);
    if (v >= g.ctx.N) return {g.ctx.N, std::nullopt};
    SquareClass c = nt::is_square_mod_p(g.ctx.unit_part(d, v), g.ctx.p)
                        ? SquareClass::square
                        : SquareClass::nonsquare;
    return {v, c};
}

struct RadicalSplit {
    GramMatrix regular;
    int radical_rank = 0;
    CongruenceWitness witness;
};

// Basis change separating a regular sublattice from the directions that
// pair into p^N Z_p (the radical at the working precision).
inline RadicalSplit radical_split(const GramMatrix& g) {
    detail::JordanWorker w(g);
    w.run();
    int r = g.n - w.processed;
    GramMatrix reg(g.ctx, w.processed);
    for (int i = 0; i < w.processed; ++i)
        for (int j = 0; j < w.processed; ++j) reg.at(i, j) = w.m(i, j);
    return {reg, r, CongruenceWitness{w.T, 1}};
}

// Normal form diag(1, ..., 1, d) of a unimodular lattice, d in {1, q} per the
// discriminant class.
inline GramMatrix unimodular_normal_form(const GramMatrix& g) {
    Discriminant d = discriminant(g);
    if (d.valuation != 0)
        throw NotUnimodular("unimodular_normal_form: determinant is not a unit");
    std::vector<BigInt> diag(g.n, BigInt(1));
    if (g.n > 0 && *d.disc == SquareClass::nonsquare) diag[g.n - 1] = g.ctx.q;
    return GramMatrix::diagonal(g.ctx, diag);
}

// Invariant of alpha G for a unit alpha: scales and ranks are unchanged, the
// discriminant of each odd-rank block flips iff alpha is a nonsquare.
inline JordanInvariant scaled_invariant(const JordanInvariant& inv, SquareClass alpha) {
    JordanInvariant out = inv;
    if (alpha == SquareClass::nonsquare)
        for (auto& b : out.blocks)
            if (b.rank % 2 == 1)
                b.disc = b.disc == SquareClass::square ? SquareClass::nonsquare
                                                       : SquareClass::square;
    return out;
}

// Decides T G1 T^t = eps G2 solvability with eps in {1, q}. Rests on the
// uniqueness of the Jordan splitting, so every scale must be resolved below
// the precision.
inline std::optional<long long> congruent_up_to_unit(const GramMatrix& g1,
                                                     const GramMatrix& g2) {
    if (!g1.ctx.same_as(g2.ctx) || g1.n != g2.n)
        throw std::invalid_argument("congruent_up_to_unit: rank or context mismatch");
    JordanInvariant i1 = jordan_split(g1).first;
    JordanInvariant i2 = jordan_split(g2).first;
    if (i1.radical_rank_at_precision > 0 || i2.radical_rank_at_precision > 0)
        throw InsufficientPrecision(
            "congruent_up_to_unit: Jordan scales reach the working precision");
    if (i1 == i2) return 1;
    JordanInvariant iq = jordan_split(g2.scaled(g2.ctx.q)).first;
    if (i1 == iq) return g1.ctx.q;
    return std::nullopt;
}

inline std::vector<JordanBlock> truncated_blocks(const JordanInvariant& inv, int t) {
    std::vector<JordanBlock> out;
    for (const auto& b : inv.blocks)
        if (b.scale < t) out.push_back(b);
    return out;
}

// p^t-equivalence: equality of the Jordan data below scale t up to a global
// unit scaling. Ranks may differ; padding by scale >= t lattices is free.
inline bool pt_equivalent(const GramMatrix& g1, const GramMatrix& g2, int t) {
    if (g1.ctx.p != g2.ctx.p) throw std::invalid_argument("pt_equivalent: prime mismatch");
    if (t < 1 || t > g1.ctx.N || t > g2.ctx.N)
        throw std::invalid_argument("pt_equivalent: need 1 <= t <= N");
    JordanInvariant i1 = jordan_split(g1).first;
    JordanInvariant i2 = jordan_split(g2).first;
    auto t1 = truncated_blocks(i1, t);
    if (t1 == truncated_blocks(i2, t)) return true;
    return t1 == truncated_blocks(scaled_invariant(i2, SquareClass::nonsquare), t);
}

} // namespace zpbrace
