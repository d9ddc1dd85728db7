#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <utility>

#include "zpbrace/errors.hpp"

namespace zpbrace {

using BigInt = boost::multiprecision::cpp_int;

// Square class of a unit in Z_p^x modulo squares. For odd p this is Z/2 and
// is decided by the residue mod p (Euler's criterion lifts through p^N).
enum class SquareClass { square, nonsquare };

inline SquareClass combine(SquareClass a, SquareClass b) {
    return a == b ? SquareClass::square : SquareClass::nonsquare;
}

inline const char* to_string(SquareClass c) {
    return c == SquareClass::square ? "square" : "nonsquare";
}

namespace nt {

// Trial division is plenty for the desk-scale primes this library targets.
inline bool is_prime(long long n) {
    if (n < 2) return false;
    for (long long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline BigInt mod_pow(BigInt base, BigInt exp, const BigInt& mod) {
    return boost::multiprecision::powm(std::move(base), std::move(exp), mod);
}

// Inverse of a modulo m, gcd(a, m) = 1 required. Extended Euclid.
inline BigInt mod_inverse(BigInt a, const BigInt& m) {
    BigInt r0 = m, r1 = a % m;
    if (r1 < 0) r1 += m;
    BigInt s0 = 0, s1 = 1;
    while (r1 != 0) {
        BigInt qt = r0 / r1;
        r0 -= qt * r1;
        std::swap(r0, r1);
        s0 -= qt * s1;
        std::swap(s0, s1);
    }
    if (r0 != 1) throw NonUnit("mod_inverse: argument shares a factor with the modulus");
    s0 %= m;
    if (s0 < 0) s0 += m;
    return s0;
}

// Euler criterion for a unit residue mod an odd prime.
inline bool is_square_mod_p(const BigInt& u, long long p) {
    BigInt r = mod_pow(u % p, (p - 1) / 2, p);
    return r == 1;
}

// Tonelli-Shanks square root mod an odd prime; returns the root in
// [1, (p-1)/2]. The argument must be a unit square mod p.
inline BigInt sqrt_mod_p(const BigInt& a0, long long p) {
    BigInt a = a0 % p;
    if (a < 0) a += p;
    BigInt r;
    if (p % 4 == 3) {
        r = mod_pow(a, (p + 1) / 4, p);
    } else {
        // write p-1 = q * 2^s with q odd
        long long q = p - 1;
        int s = 0;
        while (q % 2 == 0) {
            q /= 2;
            ++s;
        }
        long long z = 2;
        while (is_square_mod_p(z, p)) ++z;
        BigInt c = mod_pow(z, q, p);
        BigInt t = mod_pow(a, q, p);
        r = mod_pow(a, (q + 1) / 2, p);
        int m = s;
        while (t != 1) {
            BigInt t2 = t;
            int i = 0;
            while (t2 != 1) {
                t2 = t2 * t2 % p;
                ++i;
            }
            BigInt b = c;
            for (int j = 0; j < m - i - 1; ++j) b = b * b % p;
            r = r * b % p;
            c = b * b % p;
            t = t * c % p;
            m = i;
        }
    }
    if (r > (p - 1) / 2) r = p - r;
    return r;
}

} // namespace nt

// Arithmetic context: residues mod p^N model Z_p truncated at precision N.
// q is the canonical non-square unit (smallest positive non-residue mod p).
struct PAdicCtx {
    long long p = 0;
    int N = 0;
    long long q = 0;
    BigInt modulus;

    PAdicCtx() = default;

    PAdicCtx(long long p_, int N_) : p(p_), N(N_) {
        if (p < 3 || p % 2 == 0 || !nt::is_prime(p))
            throw Error("PAdicCtx: p must be an odd prime >= 3");
        if (N < 1) throw Error("PAdicCtx: precision N must be >= 1");
        q = smallest_nonsquare(p);
        modulus = boost::multiprecision::pow(BigInt(p), static_cast<unsigned>(N));
    }

    static long long smallest_nonsquare(long long p) {
        for (long long a = 2; a < p; ++a)
            if (!nt::is_square_mod_p(a, p)) return a;
        throw Error("no non-residue found (p is not an odd prime?)");
    }

    bool same_as(const PAdicCtx& o) const { return p == o.p && N == o.N; }

    BigInt pow_p(int v) const {
        return boost::multiprecision::pow(BigInt(p), static_cast<unsigned>(v));
    }

    BigInt reduce(BigInt x) const {
        x %= modulus;
        if (x < 0) x += modulus;
        return x;
    }

    // Largest v <= N with p^v | r; the sentinel N means "zero at precision",
    // never "exact zero".
    int valuation_of(const BigInt& r) const {
        if (r == 0) return N;
        int v = 0;
        BigInt x = r;
        while (v < N && x % p == 0) {
            x /= p;
            ++v;
        }
        return v;
    }

    // Unit part of a residue with valuation v < N, well defined mod p^{N-v}.
    BigInt unit_part(const BigInt& r, int v) const { return r / pow_p(v); }

    PAdicCtx at_precision(int M) const { return PAdicCtx(p, M); }
};

// An element of Z_p known to precision p^N.
struct PAdicInt {
    PAdicCtx ctx;
    BigInt residue;

    PAdicInt() = default;
    PAdicInt(PAdicCtx c, BigInt r) : ctx(std::move(c)), residue(ctx.reduce(std::move(r))) {}

    PAdicInt operator+(const PAdicInt& o) const { return {ctx, residue + o.residue}; }
    PAdicInt operator-(const PAdicInt& o) const { return {ctx, residue - o.residue}; }
    PAdicInt operator*(const PAdicInt& o) const { return {ctx, residue * o.residue}; }
    PAdicInt operator-() const { return {ctx, -residue}; }
    bool operator==(const PAdicInt& o) const {
        return ctx.p == o.ctx.p && ctx.N == o.ctx.N && residue == o.residue;
    }
};

// Valuation in [0, N]; N is the at-precision sentinel.
inline int valuation(const PAdicInt& x) { return x.ctx.valuation_of(x.residue); }

inline bool is_zero_at_precision(const PAdicInt& x) { return x.residue == 0; }

inline SquareClass square_class(const PAdicInt& u) {
    if (valuation(u) != 0) throw NonUnit("square_class: argument is not a unit");
    return nt::is_square_mod_p(u.residue, u.ctx.p) ? SquareClass::square
                                                   : SquareClass::nonsquare;
}

namespace nt {

// Hensel lift of the canonical root mod p to mod p^N by Newton iteration;
// u must be a unit square. The result r satisfies r^2 = u mod p^N and
// r mod p in [1, (p-1)/2].
inline BigInt hensel_sqrt(const BigInt& u, long long p, int N) {
    BigInt r = sqrt_mod_p(u, p);
    int have = 1;
    while (have < N) {
        int next = have * 2 < N ? have * 2 : N;
        BigInt mod = boost::multiprecision::pow(BigInt(p), static_cast<unsigned>(next));
        // r <- (r + u/r) / 2 mod p^next
        BigInt rinv = mod_inverse(r % mod, mod);
        BigInt inv2m = mod_inverse(2, mod);
        r = (r + u % mod * rinv) % mod * inv2m % mod;
        have = next;
    }
    return r;
}

} // namespace nt

// Canonical square root of a square unit: root r with r^2 = u mod p^N and
// r mod p in the lower half range.
inline PAdicInt sqrt_unit(const PAdicInt& u) {
    if (valuation(u) != 0) throw NonUnit("sqrt_unit: argument is not a unit");
    if (square_class(u) == SquareClass::nonsquare)
        throw NotASquare("sqrt_unit: argument is not a square unit");
    return {u.ctx, nt::hensel_sqrt(u.residue, u.ctx.p, u.ctx.N)};
}

// Smallest positive quadratic non-residue mod p.
inline long long canonical_nonsquare(long long p) {
    if (p < 3 || p % 2 == 0 || !nt::is_prime(p))
        throw Error("canonical_nonsquare: p must be an odd prime");
    return PAdicCtx::smallest_nonsquare(p);
}

} // namespace zpbrace
