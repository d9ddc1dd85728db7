#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "zpbrace/latform.hpp"

namespace zpbrace {

// torsion_free: M = Z_p^n truncated at precision N = theta.ctx.N.
// torsion: M = (Z/p^k)^n with k = theta.ctx.N; arithmetic is then exact.
enum class AlgebraMode { torsion_free, torsion };

struct Element {
    std::vector<BigInt> coords;

    bool operator==(const Element& o) const { return coords == o.coords; }
    bool is_zero() const {
        for (const auto& c : coords)
            if (c != 0) return false;
        return true;
    }
};

// The automorphism part gamma_a of tau_a = gamma_a sigma_a: unitriangular
// [[1, block],[0, 1]] with block the Theta-weighted sum of a's coordinates.
struct GammaMap {
    PAdicCtx ctx;
    std::vector<BigInt> block; // length n-1 column

    int rank() const { return static_cast<int>(block.size()) + 1; }

    Matrix matrix() const {
        int n = rank();
        Matrix m = Matrix::identity(ctx, n);
        for (int i = 0; i + 1 < n; ++i) m.at(i, n - 1) = block[i];
        return m;
    }

    Element apply(const Element& x) const {
        Element y = x;
        int n = rank();
        BigInt s = 0;
        for (int i = 0; i + 1 < n; ++i) s += x.coords[i] * block[i];
        y.coords[n - 1] = ctx.reduce(y.coords[n - 1] + s);
        return y;
    }

    bool operator==(const GammaMap& o) const { return block == o.block; }
};

struct VerifyScope {
    enum class Kind { exhaustive, sampled };
    Kind kind = Kind::sampled;
    int level = 1;            // exhaustive: coordinates range over [0, p^level)
    std::uint64_t count = 500;
    std::uint64_t seed = 0;

    static VerifyScope exhaustive(int level) {
        VerifyScope s;
        s.kind = Kind::exhaustive;
        s.level = level;
        return s;
    }
    static VerifyScope sampled(std::uint64_t count, std::uint64_t seed) {
        VerifyScope s;
        s.kind = Kind::sampled;
        s.count = count;
        s.seed = seed;
        return s;
    }
};

struct VerificationReport {
    bool brace_distributivity = true;
    bool dot_commutative_associative = true;
    bool three_nilpotent = true;
    bool commutator_identity = true;
    bool circle_group = true;
    // first few failing triples, tagged by the family that failed
    std::vector<std::pair<std::string, std::array<Element, 3>>> counterexamples;
    std::string scope;
    std::uint64_t seed = 0;
    std::uint64_t triples_checked = 0;

    bool all_pass() const {
        return brace_distributivity && dot_commutative_associative && three_nilpotent &&
               commutator_identity && circle_group;
    }
};

struct Annihilator {
    int rank = 0;
    std::vector<Element> basis;
};

inline constexpr std::uint64_t kVerifyTripleBudget = 1'000'000;

// Commutative 3-nilpotent algebra (M, +, .) and brace (M, +, o) built from a
// symmetric defining matrix Theta of rank n-1; products land in span{e_n}.
struct BraceAlgebra {
    PAdicCtx ctx;
    int n = 0;
    AlgebraMode mode = AlgebraMode::torsion_free;
    GramMatrix theta;

    static BraceAlgebra from_theta(const GramMatrix& theta, AlgebraMode mode) {
        BraceAlgebra a = from_theta_unchecked(theta, mode);
        JordanInvariant inv = jordan_split(theta).first;
        if (inv.radical_rank_at_precision > 0) {
            // torsion mode tolerates p-divisible kernel directions but a unit
            // kernel vector would collide with the complement of Ann(M)
            if (mode == AlgebraMode::torsion_free)
                throw RankDeficient("from_theta: Theta has radical directions at precision");
            throw UnitKernel("from_theta: a unit combination of Theta's columns vanishes");
        }
        return a;
    }

    // Test hook: skips the rank validation (not the symmetry check).
    static BraceAlgebra from_theta_unchecked(const GramMatrix& theta, AlgebraMode mode) {
        BraceAlgebra a;
        a.ctx = theta.ctx;
        a.n = theta.n + 1;
        a.mode = mode;
        a.theta = theta;
        return a;
    }

    // Raw bypass used by tests to inject invalid tables.
    static BraceAlgebra raw(PAdicCtx ctx, int n, AlgebraMode mode, std::vector<BigInt> theta_entries) {
        BraceAlgebra a;
        a.ctx = ctx;
        a.n = n;
        a.mode = mode;
        a.theta.ctx = ctx;
        a.theta.n = n - 1;
        a.theta.entries = std::move(theta_entries);
        return a;
    }

    Element zero() const { return Element{std::vector<BigInt>(n)}; }

    Element element(const std::vector<long long>& coords) const {
        Element e;
        e.coords.reserve(n);
        for (long long c : coords) e.coords.push_back(ctx.reduce(BigInt(c)));
        if (static_cast<int>(e.coords.size()) != n)
            throw std::invalid_argument("element: coordinate count mismatch");
        return e;
    }

    Element basis_vector(int i) const {
        Element e = zero();
        e.coords[i] = 1;
        return e;
    }

    Element add(const Element& a, const Element& b) const {
        Element c = zero();
        for (int i = 0; i < n; ++i) c.coords[i] = ctx.reduce(a.coords[i] + b.coords[i]);
        return c;
    }

    Element neg(const Element& a) const {
        Element c = zero();
        for (int i = 0; i < n; ++i) c.coords[i] = ctx.reduce(-a.coords[i]);
        return c;
    }

    BigInt theta_pair(const Element& a, const Element& b) const {
        BigInt s = 0;
        for (int i = 0; i + 1 < n; ++i)
            for (int j = 0; j + 1 < n; ++j) s += a.coords[i] * theta.at(i, j) * b.coords[j];
        return ctx.reduce(std::move(s));
    }

    // a . b = (0, ..., 0, a' Theta b'^t)
    Element dot(const Element& a, const Element& b) const {
        Element c = zero();
        c.coords[n - 1] = theta_pair(a, b);
        return c;
    }

    // a o b = a + b + a . b
    Element circle(const Element& a, const Element& b) const {
        Element c = add(a, b);
        c.coords[n - 1] = ctx.reduce(c.coords[n - 1] + theta_pair(a, b));
        return c;
    }

    GammaMap gamma(const Element& a) const {
        GammaMap g{ctx, std::vector<BigInt>(n - 1)};
        for (int i = 0; i + 1 < n; ++i) {
            BigInt s = 0;
            for (int j = 0; j + 1 < n; ++j) s += theta.at(i, j) * a.coords[j];
            g.block[i] = ctx.reduce(std::move(s));
        }
        return g;
    }

    // The circle inverse (-a', a' Theta a'^t - a_n).
    Element circle_inverse(const Element& a) const {
        Element b = neg(a);
        b.coords[n - 1] = ctx.reduce(theta_pair(a, a) - a.coords[n - 1]);
        return b;
    }

    Annihilator annihilator() const;
    VerificationReport verify_brace(const VerifyScope& scope) const;
};

inline Annihilator BraceAlgebra::annihilator() const {
    Annihilator ann;
    if (mode == AlgebraMode::torsion_free) {
        ann.rank = 1;
        ann.basis.push_back(basis_vector(n - 1));
        return ann;
    }
    // Kernel of Theta mod p^k, read off the Jordan splitting: with
    // T Theta T^t = diag(p^{v_i} u_i), the kernel is generated by
    // p^{k - v_i} (row i of T) for every v_i > 0.
    int k = ctx.N;
    detail::JordanWorker w(theta);
    w.run();
    for (int i = 0; i < theta.n; ++i) {
        int v = i < w.processed ? w.diag_val[i] : k;
        if (v == 0) continue;
        BigInt scale = ctx.pow_p(k - v);
        Element e = zero();
        bool nonzero = false;
        for (int j = 0; j < theta.n; ++j) {
            e.coords[j] = ctx.reduce(scale * w.T.at(i, j));
            nonzero = nonzero || e.coords[j] != 0;
        }
        if (nonzero) ann.basis.push_back(e);
    }
    ann.basis.push_back(basis_vector(n - 1));
    ann.rank = static_cast<int>(ann.basis.size());
    return ann;
}

namespace detail {

inline BigInt uniform_below(std::mt19937_64& rng, const BigInt& bound) {
    unsigned bits = boost::multiprecision::msb(bound) + 1;
    for (;;) {
        BigInt x = 0;
        for (unsigned got = 0; got < bits; got += 64) {
            x <<= 64;
            x += rng();
        }
        x >>= (((bits + 63) / 64) * 64 - bits);
        if (x < bound) return x;
    }
}

} // namespace detail

inline VerificationReport BraceAlgebra::verify_brace(const VerifyScope& scope) const {
    VerificationReport rep;
    rep.seed = scope.seed;

    std::vector<Element> pool;
    std::uint64_t triples = 0;
    if (scope.kind == VerifyScope::Kind::exhaustive) {
        BigInt range = boost::multiprecision::pow(BigInt(ctx.p), static_cast<unsigned>(scope.level * n));
        if (range * range * range > kVerifyTripleBudget)
            throw BudgetExceeded("verify_brace: exhaustive scope exceeds the triple budget");
        std::uint64_t count = range.convert_to<std::uint64_t>();
        BigInt side = boost::multiprecision::pow(BigInt(ctx.p), static_cast<unsigned>(scope.level));
        for (std::uint64_t idx = 0; idx < count; ++idx) {
            Element e = zero();
            BigInt rem = idx;
            for (int i = 0; i < n; ++i) {
                e.coords[i] = ctx.reduce(rem % side);
                rem /= side;
            }
            pool.push_back(std::move(e));
        }
        triples = count * count * count;
        rep.scope = "exhaustive(level=" + std::to_string(scope.level) + ")";
    } else {
        std::mt19937_64 rng(scope.seed);
        for (std::uint64_t i = 0; i < 3 * scope.count; ++i) {
            Element e = zero();
            for (int j = 0; j < n; ++j) e.coords[j] = detail::uniform_below(rng, ctx.modulus);
            pool.push_back(std::move(e));
        }
        triples = scope.count;
        rep.scope = "sampled(count=" + std::to_string(scope.count) + ")";
    }
    rep.triples_checked = triples;

    auto note = [&](const char* family, bool& flag, const Element& a, const Element& b,
                    const Element& c) {
        flag = false;
        if (rep.counterexamples.size() < 8)
            rep.counterexamples.push_back({family, {a, b, c}});
    };

    auto check_triple = [&](const Element& x, const Element& y, const Element& z) {
        // (i) both brace laws
        {
            Element lhs = add(circle(x, add(y, z)), x);
            Element rhs = add(circle(x, y), circle(x, z));
            Element lhs2 = add(circle(add(x, y), z), z);
            Element rhs2 = add(circle(x, z), circle(y, z));
            if (!(lhs == rhs) || !(lhs2 == rhs2)) note("brace_distributivity", rep.brace_distributivity, x, y, z);
        }
        // (ii) commutativity and associativity of the product
        {
            if (!(dot(x, y) == dot(y, x)) ||
                !(dot(dot(x, y), z) == dot(x, dot(y, z))))
                note("dot_commutative_associative", rep.dot_commutative_associative, x, y, z);
        }
        // (iii) M.M.M = 0
        if (!dot(dot(x, y), z).is_zero()) note("three_nilpotent", rep.three_nilpotent, x, y, z);
        // (iv) sigma_a^{-1} tau_b^{-1} sigma_a tau_b = sigma_{a.b} acting on x
        {
            const Element& a = y;
            const Element& b = z;
            Element binv = circle_inverse(b);
            Element w = add(x, neg(a));
            w = add(gamma(binv).apply(w), binv);
            w = add(w, a);
            w = add(gamma(b).apply(w), b);
            if (!(w == add(x, dot(a, b)))) note("commutator_identity", rep.commutator_identity, x, y, z);
        }
        // (v) (M, o) abelian with inverses
        {
            if (!(circle(x, y) == circle(y, x)) ||
                !circle(x, circle_inverse(x)).is_zero())
                note("circle_group", rep.circle_group, x, y, z);
        }
    };

    if (scope.kind == VerifyScope::Kind::exhaustive) {
        for (const Element& x : pool)
            for (const Element& y : pool)
                for (const Element& z : pool) check_triple(x, y, z);
    } else {
        for (std::uint64_t i = 0; i < scope.count; ++i)
            check_triple(pool[3 * i], pool[3 * i + 1], pool[3 * i + 2]);
    }
    return rep;
}

struct Isomorphism {
    long long epsilon = 1;
    CongruenceWitness witness;
};

// Isomorphism test for torsion-free maximal-rank algebras: A Theta_1 A^t =
// eps Theta_2 decided through the Jordan invariants, with the witness
// assembled from the two Jordan transforms.
inline std::optional<Isomorphism> isomorphic(const BraceAlgebra& a1, const BraceAlgebra& a2) {
    if (!a1.ctx.same_as(a2.ctx) || a1.n != a2.n)
        throw std::invalid_argument("isomorphic: rank or context mismatch");
    if (a1.mode != AlgebraMode::torsion_free || a2.mode != AlgebraMode::torsion_free)
        throw std::invalid_argument("isomorphic: classification requires torsion-free mode");
    std::optional<long long> eps = congruent_up_to_unit(a1.theta, a2.theta);
    if (!eps) return std::nullopt;
    auto w1 = jordan_split(a1.theta).second;
    auto w2 = jordan_split(a2.theta.scaled(*eps)).second;
    Matrix a = w2.transform.inverse_unimodular() * w1.transform;
    return Isomorphism{*eps, CongruenceWitness{a, *eps}};
}

// Unimodular classification: two classes when n - d is even, one otherwise.
inline int count_unimodular_classes(int n, int d) {
    if (d < 1 || n <= d) throw std::invalid_argument("count_unimodular_classes: need n > d >= 1");
    return (n - d) % 2 == 0 ? 2 : 1;
}

} // namespace zpbrace
