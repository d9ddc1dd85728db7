#include <catch2/catch_amalgamated.hpp>

#include <numeric>
#include <random>
#include <set>

#include "zpbrace/padic.hpp"

using namespace zpbrace;

namespace {

// Brute-force residue squares; the tests regenerate every derived value from
// these instead of trusting the optimized path.
std::set<long long> squares_mod(long long m) {
    std::set<long long> s;
    for (long long x = 1; x < m; ++x)
        if (std::gcd(x, m) == 1) s.insert(x * x % m);
    return s;
}

long long bf_sqrt_below(long long u, long long m, long long p) {
    for (long long r = 1; r < m; ++r)
        if (r * r % m == u && r % p <= (p - 1) / 2) return r;
    return -1;
}

} // namespace

TEST_CASE("context validation") {
    CHECK_THROWS_AS(PAdicCtx(2, 3), Error);
    CHECK_THROWS_AS(PAdicCtx(9, 2), Error);
    CHECK_THROWS_AS(PAdicCtx(5, 0), Error);
    PAdicCtx c(5, 3);
    CHECK(c.modulus == 125);
    CHECK(c.q == 2);
}

TEST_CASE("valuation") {
    PAdicCtx c53(5, 3);
    CHECK(valuation(PAdicInt{c53, 50}) == 2);
    CHECK(valuation(PAdicInt{c53, 0}) == 3); // at-precision sentinel
    CHECK(is_zero_at_precision(PAdicInt{c53, 0}));
    PAdicCtx c72(7, 2);
    CHECK(valuation(PAdicInt{c72, 21}) == 1);
}

TEST_CASE("square_class") {
    PAdicCtx c5(5, 3), c7(7, 2);
    CHECK(square_class(PAdicInt{c5, 4}) == SquareClass::square);

    auto sq7 = squares_mod(7);
    CHECK(sq7 == std::set<long long>{1, 2, 4});
    CHECK(sq7.count(3) == 0);
    CHECK(square_class(PAdicInt{c7, 3}) == SquareClass::nonsquare);

    auto sq5 = squares_mod(5);
    CHECK(sq5 == std::set<long long>{1, 4});
    CHECK(square_class(PAdicInt{c5, 7}) == SquareClass::nonsquare);

    CHECK_THROWS_AS(square_class(PAdicInt{c5, 10}), NonUnit);
}

TEST_CASE("sqrt_unit") {
    PAdicCtx c52(5, 2);
    CHECK(sqrt_unit(PAdicInt{c52, 4}).residue == 2);

    // brute force over residues mod 25: the canonical root of 6
    CHECK(bf_sqrt_below(6, 25, 5) == 16);
    CHECK(sqrt_unit(PAdicInt{c52, 6}).residue == 16);

    PAdicCtx c33(3, 3);
    CHECK(bf_sqrt_below(7, 27, 3) == 13);
    CHECK(sqrt_unit(PAdicInt{c33, 7}).residue == 13);

    CHECK_THROWS_AS(sqrt_unit(PAdicInt{c52, 10}), NonUnit);
    PAdicCtx c53(5, 3);
    CHECK_THROWS_AS(sqrt_unit(PAdicInt{c53, 7}), NotASquare);
}

TEST_CASE("canonical_nonsquare") {
    // regenerate from the residue squares
    for (long long p : {3LL, 5LL, 7LL, 11LL, 13LL}) {
        auto sq = squares_mod(p);
        long long expect = 2;
        while (sq.count(expect)) ++expect;
        CHECK(canonical_nonsquare(p) == expect);
    }
    CHECK(canonical_nonsquare(3) == 2);
    CHECK(canonical_nonsquare(5) == 2);
    CHECK(canonical_nonsquare(7) == 3);
}

TEST_CASE("valuation is multiplicative up to the sentinel") {
    std::mt19937_64 rng(7);
    for (long long p : {3LL, 5LL, 7LL}) {
        PAdicCtx c(p, 5);
        std::uniform_int_distribution<long long> dist(0, (long long)(c.modulus.convert_to<long long>() - 1));
        for (int it = 0; it < 400; ++it) {
            PAdicInt x{c, dist(rng)}, y{c, dist(rng)};
            int expect = std::min(valuation(x) + valuation(y), c.N);
            CHECK(valuation(x * y) == expect);
        }
    }
}

TEST_CASE("sqrt squares back, exhaustively at small precision") {
    for (auto [p, N] : std::vector<std::pair<long long, int>>{{3, 7}, {5, 4}, {7, 3}}) {
        PAdicCtx c(p, N);
        long long m = c.modulus.convert_to<long long>();
        for (long long u = 1; u < m; ++u) {
            if (u % p == 0) continue;
            PAdicInt x{c, u};
            if (square_class(x) == SquareClass::nonsquare) continue;
            PAdicInt r = sqrt_unit(x);
            CHECK(r * r == x);
            CHECK(r.residue % p <= (p - 1) / 2);
        }
    }
}

TEST_CASE("square classes multiply like Z/2") {
    std::mt19937_64 rng(11);
    for (long long p : {3LL, 5LL, 7LL, 11LL}) {
        PAdicCtx c(p, 4);
        long long m = c.modulus.convert_to<long long>();
        std::uniform_int_distribution<long long> dist(1, m - 1);
        for (int it = 0; it < 200; ++it) {
            long long a = dist(rng), b = dist(rng);
            if (a % p == 0 || b % p == 0) continue;
            PAdicInt x{c, a}, y{c, b};
            CHECK(square_class(x * y) == combine(square_class(x), square_class(y)));
        }
    }
}

TEST_CASE("canonical nonsquare satisfies the Euler test") {
    for (long long p : {3LL, 5LL, 7LL, 11LL, 13LL, 17LL, 19LL, 23LL}) {
        long long q = canonical_nonsquare(p);
        CHECK(nt::mod_pow(q, (p - 1) / 2, p) == p - 1);
    }
}
