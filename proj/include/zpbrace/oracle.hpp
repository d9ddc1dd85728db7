#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <vector>

#include "zpbrace/latform.hpp"

namespace zpbrace::oracle {

// Brute-force reference implementations. Deliberately re-coded from scratch
// rather than calling into the optimized paths: the arithmetic helpers below
// duplicate the library ones on purpose.

namespace detail {

inline BigInt omod(BigInt x, const BigInt& m) {
    x %= m;
    if (x < 0) x += m;
    return x;
}

inline int oval(BigInt x, long long p, int cap) {
    if (x == 0) return cap;
    int v = 0;
    while (v < cap && x % p == 0) {
        x /= p;
        ++v;
    }
    return v;
}

inline bool osquare(const BigInt& u, long long p) {
    BigInt b = omod(u, p), r = 1;
    long long e = (p - 1) / 2;
    while (e) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return r == 1;
}

inline BigInt oinv(const BigInt& a, const BigInt& m) {
    BigInt r0 = m, r1 = omod(a, m), s0 = 0, s1 = 1;
    while (r1 != 0) {
        BigInt qt = r0 / r1;
        r0 -= qt * r1;
        std::swap(r0, r1);
        s0 -= qt * s1;
        std::swap(s0, s1);
    }
    return omod(s0, m);
}

} // namespace detail

// Naive symmetric Gaussian elimination over Z/p^N: pick any entry of minimal
// valuation, fold it onto the diagonal if needed, eliminate, recurse. Only
// the invariant is produced, no witness and no canonical unit normalization.
inline JordanInvariant bf_jordan(const GramMatrix& g) {
    const long long p = g.ctx.p;
    const int N = g.ctx.N;
    const int n = g.n;
    const BigInt mod = boost::multiprecision::pow(BigInt(p), static_cast<unsigned>(N));
    std::vector<BigInt> m = g.entries;
    auto e = [&](int i, int j) -> BigInt& { return m[i * n + j]; };
    auto addrow = [&](int dst, int src, const BigInt& c) {
        for (int j = 0; j < n; ++j) e(dst, j) = detail::omod(e(dst, j) + c * e(src, j), mod);
        for (int i = 0; i < n; ++i) e(i, dst) = detail::omod(e(i, dst) + c * e(i, src), mod);
    };

    std::vector<std::pair<int, bool>> diag; // (scale, unit part is square)
    std::vector<int> live(n);
    for (int i = 0; i < n; ++i) live[i] = i;

    while (!live.empty()) {
        int best = N, bi = -1, bj = -1;
        for (int i : live)
            for (int j : live) {
                int v = detail::oval(e(i, j), p, N);
                if (v < best) {
                    best = v;
                    bi = i;
                    bj = j;
                }
            }
        if (bi < 0) break; // all remaining directions vanish at precision
        if (bi != bj) {
            addrow(bi, bj, 1);
            if (detail::oval(e(bi, bi), p, N) != best) addrow(bi, bj, mod - 2); // undo to e_i - e_j
        }
        BigInt pv = boost::multiprecision::pow(BigInt(p), static_cast<unsigned>(best));
        BigInt pm = boost::multiprecision::pow(BigInt(p), static_cast<unsigned>(N - best));
        BigInt u = detail::omod(e(bi, bi) / pv, pm);
        BigInt uinv = detail::oinv(u, pm);
        for (int r : live) {
            if (r == bi || e(r, bi) == 0) continue;
            BigInt c = detail::omod(e(r, bi) / pv * uinv, pm);
            addrow(r, bi, mod - c);
        }
        diag.push_back({best, detail::osquare(u, p)});
        live.erase(std::find(live.begin(), live.end(), bi));
    }

    std::sort(diag.begin(), diag.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    JordanInvariant inv;
    inv.radical_rank_at_precision = static_cast<int>(live.size());
    size_t i = 0;
    while (i < diag.size()) {
        size_t j = i;
        bool sq = true;
        while (j < diag.size() && diag[j].first == diag[i].first) {
            sq = sq == diag[j].second;
            ++j;
        }
        inv.blocks.push_back({diag[i].first, static_cast<int>(j - i),
                              sq ? SquareClass::square : SquareClass::nonsquare});
        i = j;
    }
    return inv;
}

inline constexpr std::uint64_t kSearchBudget = 1'000'000;

// Exhaustive congruence search over GL_n(Z/p^k): is there (A, eps) with
// A G1 A^t = eps G2, eps in {1} or {1, q}?
inline bool bf_congruent(const GramMatrix& g1, const GramMatrix& g2, bool allow_scaling) {
    if (g1.n != g2.n || g1.ctx.p != g2.ctx.p || g1.ctx.N != g2.ctx.N)
        throw std::invalid_argument("bf_congruent: shape or modulus mismatch");
    const long long p = g1.ctx.p;
    const int k = g1.ctx.N;
    const int n = g1.n;
    BigInt mod = boost::multiprecision::pow(BigInt(p), static_cast<unsigned>(k));
    BigInt space = 1;
    for (int i = 0; i < n * n; ++i) {
        space *= mod;
        if (space > kSearchBudget)
            throw BudgetExceeded("bf_congruent: search space exceeds the budget");
    }

    std::vector<BigInt> eps = {1};
    if (allow_scaling) eps.push_back(g1.ctx.q);

    std::uint64_t total = space.convert_to<std::uint64_t>();
    std::uint64_t side = mod.convert_to<std::uint64_t>();
    std::vector<BigInt> a(n * n);
    for (std::uint64_t idx = 0; idx < total; ++idx) {
        std::uint64_t rem = idx;
        for (int i = 0; i < n * n; ++i) {
            a[i] = rem % side;
            rem /= side;
        }
        // determinant by Laplace expansion (n <= 3 in practice)
        std::function<BigInt(std::vector<int>, std::vector<int>)> det =
            [&](std::vector<int> rs, std::vector<int> cs) -> BigInt {
            if (rs.size() == 1) return a[rs[0] * n + cs[0]];
            BigInt s = 0, sign = 1;
            for (size_t c = 0; c < cs.size(); ++c) {
                std::vector<int> rs2(rs.begin() + 1, rs.end());
                std::vector<int> cs2 = cs;
                cs2.erase(cs2.begin() + c);
                s += sign * a[rs[0] * n + cs[c]] * det(rs2, cs2);
                sign = -sign;
            }
            return s;
        };
        std::vector<int> all(n);
        for (int i = 0; i < n; ++i) all[i] = i;
        if (detail::omod(det(all, all), p) == 0) continue; // not invertible
        for (const BigInt& ep : eps) {
            bool ok = true;
            for (int i = 0; i < n && ok; ++i)
                for (int j = 0; j < n && ok; ++j) {
                    BigInt s = 0;
                    for (int r = 0; r < n; ++r)
                        for (int c = 0; c < n; ++c)
                            s += a[i * n + r] * g1.at(r, c) * a[j * n + c];
                    if (detail::omod(s, mod) != detail::omod(ep * g2.at(i, j), mod)) ok = false;
                }
            if (ok) return true;
        }
    }
    return false;
}

// Explicit multiplication table of a finite algebra on (Z/p^k)^n, indexed by
// element number (base p^k digits are the coordinates).
struct FiniteAlgebraTable {
    long long p = 0;
    int k = 1;
    int n = 1;
    std::vector<std::vector<int>> table;

    static std::uint64_t order(long long p, int k, int n) {
        std::uint64_t e = 1;
        for (int i = 0; i < k * n; ++i) e *= static_cast<std::uint64_t>(p);
        return e;
    }

    std::uint64_t size() const { return order(p, k, n); }
    std::uint64_t modulus() const {
        std::uint64_t m = 1;
        for (int i = 0; i < k; ++i) m *= static_cast<std::uint64_t>(p);
        return m;
    }

    std::vector<std::uint64_t> decode(std::uint64_t idx) const {
        std::vector<std::uint64_t> c(n);
        std::uint64_t m = modulus();
        for (int i = 0; i < n; ++i) {
            c[i] = idx % m;
            idx /= m;
        }
        return c;
    }

    std::uint64_t encode(const std::vector<std::uint64_t>& c) const {
        std::uint64_t m = modulus(), idx = 0;
        for (int i = n - 1; i >= 0; --i) idx = idx * m + c[i] % m;
        return idx;
    }

    std::uint64_t add(std::uint64_t x, std::uint64_t y) const {
        auto a = decode(x), b = decode(y);
        std::uint64_t m = modulus();
        for (int i = 0; i < n; ++i) a[i] = (a[i] + b[i]) % m;
        return encode(a);
    }

    std::uint64_t scale(std::uint64_t lambda, std::uint64_t x) const {
        auto a = decode(x);
        std::uint64_t m = modulus();
        for (int i = 0; i < n; ++i) a[i] = a[i] * (lambda % m) % m;
        return encode(a);
    }

    static FiniteAlgebraTable build(long long p, int k, int n,
                                    const std::function<std::uint64_t(std::uint64_t, std::uint64_t)>& mul) {
        FiniteAlgebraTable t;
        t.p = p;
        t.k = k;
        t.n = n;
        std::uint64_t e = order(p, k, n);
        if (e * e > kSearchBudget)
            throw BudgetExceeded("FiniteAlgebraTable: table exceeds the budget");
        t.table.assign(e, std::vector<int>(e));
        for (std::uint64_t i = 0; i < e; ++i)
            for (std::uint64_t j = 0; j < e; ++j) t.table[i][j] = static_cast<int>(mul(i, j));
        return t;
    }

    static FiniteAlgebraTable zero(long long p, int k, int n) {
        return build(p, k, n, [](std::uint64_t, std::uint64_t) { return 0; });
    }
};

struct TableReport {
    bool commutative = true;
    bool associative = true;
    bool bilinear = true;
    bool three_nilpotent = true;
    bool radical_ring = true;

    bool all_pass() const {
        return commutative && associative && bilinear && three_nilpotent && radical_ring;
    }
};

// Literal check of the algebra laws on the full table.
inline TableReport bf_verify_algebra(const FiniteAlgebraTable& t) {
    std::uint64_t e = t.size();
    if (e * e * e > 100 * kSearchBudget)
        throw BudgetExceeded("bf_verify_algebra: triple scan exceeds the budget");
    TableReport rep;
    for (std::uint64_t i = 0; i < e && rep.commutative; ++i)
        for (std::uint64_t j = 0; j < e && rep.commutative; ++j)
            if (t.table[i][j] != t.table[j][i]) rep.commutative = false;
    for (std::uint64_t i = 0; i < e; ++i)
        for (std::uint64_t j = 0; j < e; ++j) {
            std::uint64_t ij = t.table[i][j];
            for (std::uint64_t l = 0; l < e; ++l) {
                if (t.table[ij][l] != t.table[i][t.table[j][l]]) rep.associative = false;
                if (t.table[ij][l] != 0) rep.three_nilpotent = false;
            }
        }
    // additivity in the first argument (the second follows when commutative,
    // but is checked through the transposed access anyway)
    for (std::uint64_t i = 0; i < e && rep.bilinear; ++i)
        for (std::uint64_t i2 = 0; i2 < e && rep.bilinear; ++i2)
            for (std::uint64_t j = 0; j < e; ++j) {
                if (t.table[t.add(i, i2)][j] !=
                    static_cast<int>(t.add(t.table[i][j], t.table[i2][j]))) {
                    rep.bilinear = false;
                    break;
                }
                if (t.table[j][t.add(i, i2)] !=
                    static_cast<int>(t.add(t.table[j][i], t.table[j][i2]))) {
                    rep.bilinear = false;
                    break;
                }
            }
    for (std::uint64_t lam = 0; lam < t.modulus() && rep.bilinear; ++lam)
        for (std::uint64_t i = 0; i < e && rep.bilinear; ++i)
            for (std::uint64_t j = 0; j < e; ++j)
                if (t.table[t.scale(lam, i)][j] !=
                    static_cast<int>(t.scale(lam, t.table[i][j]))) {
                    rep.bilinear = false;
                    break;
                }
    for (std::uint64_t i = 0; i < e; ++i) {
        bool found = false;
        for (std::uint64_t j = 0; j < e && !found; ++j)
            if (t.add(t.add(i, j), t.table[i][j]) == 0) found = true;
        if (!found) {
            rep.radical_ring = false;
            break;
        }
    }
    return rep;
}

} // namespace zpbrace::oracle
