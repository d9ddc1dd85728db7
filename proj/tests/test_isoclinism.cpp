#include <catch2/catch_amalgamated.hpp>

#include "zpbrace/isoclinism.hpp"
#include "testutil.hpp"

using namespace zpbrace;

namespace {

TorsionForm form(long long p, int t, const std::vector<std::vector<long long>>& rows) {
    return TorsionForm::make(PAdicCtx(p, t), rows);
}

std::vector<JordanBlock> inv_blocks(const TorsionForm& f) {
    return isoclinism_invariant(f).blocks;
}

} // namespace

TEST_CASE("stem") {
    StemAlgebra s = stem(form(3, 1, {{1, 0}, {0, 1}}));
    CHECK(s.quotient_rank == 2);
    CHECK(s.rank() == 3);

    TorsionForm f = form(3, 2, {{3}});
    CHECK(f.content_valuation() == 1); // M.M = 3 (Z/9)
    CHECK(!f.is_surjective());

    StemAlgebra hyp = stem(form(5, 1, {{0, 1}, {1, 0}}));
    CHECK(hyp.dot(hyp.element({1, 0, 0}), hyp.element({0, 1, 0})) == hyp.element({0, 0, 1}));
    CHECK(form(5, 1, {{0, 1}, {1, 0}}).is_surjective());
}

TEST_CASE("stem product restricted to the quotient reproduces the form") {
    std::mt19937_64 rng(17);
    for (long long p : {3LL, 5LL})
        for (int t = 1; t <= 3; ++t) {
            PAdicCtx c(p, t);
            for (int it = 0; it < 10; ++it) {
                int m = 1 + static_cast<int>(rng() % 4);
                TorsionForm f = TorsionForm::from_gram(testutil::random_symmetric(rng, c, m));
                StemAlgebra s = stem(f);
                for (int i = 0; i < m; ++i)
                    for (int j = 0; j < m; ++j) {
                        std::vector<long long> ei(m + 1, 0), ej(m + 1, 0);
                        ei[i] = 1;
                        ej[j] = 1;
                        Element prod = s.dot(s.element(ei), s.element(ej));
                        CHECK(prod.coords[m] == f.gram.at(i, j));
                        for (int r = 0; r < m; ++r) CHECK(prod.coords[r] == 0);
                    }
            }
        }
}

TEST_CASE("lift") {
    TorsionForm one = form(5, 1, {{1}});
    Covering c = lift(one, 3, LiftStrategy::plain);
    CHECK(c.gram_lift.ctx.N == 3);
    CHECK(c.gram_lift.at(0, 0) == 1);

    TorsionForm zero = form(5, 1, {{0}});
    Covering nd = lift(zero, 4, LiftStrategy::nondegenerate, 1);
    CHECK(nd.gram_lift.at(0, 0) == 620); // -5 mod 5^4
    JordanInvariant inv = jordan_split(nd.gram_lift).first;
    CHECK(inv.radical_rank_at_precision == 0);
    REQUIRE(inv.blocks.size() == 1);
    CHECK(inv.blocks[0].scale == 1);
    CHECK(inv.blocks[0].rank == 1);

    TorsionForm diag13 = form(3, 2, {{1, 0}, {0, 3}});
    Covering pl = lift(diag13, 5, LiftStrategy::plain);
    CHECK(jordan_split(pl.gram_lift).first.blocks ==
          std::vector<JordanBlock>{{0, 1, SquareClass::square}, {1, 1, SquareClass::square}});

    CHECK_THROWS_AS(lift(form(3, 2, {{1}}), 1, LiftStrategy::plain), PrecisionTooSmall);
    CHECK_THROWS_AS(lift(zero, 1, LiftStrategy::nondegenerate, 1), NoNondegenerateLift);
    CHECK_THROWS_AS(lift(form(3, 2, {{1}}), 5, LiftStrategy::nondegenerate, 1),
                    std::invalid_argument); // h below t
}

TEST_CASE("lift reduces back to the torsion form") {
    std::mt19937_64 rng(23);
    for (int it = 0; it < 20; ++it) {
        PAdicCtx c(5, 2);
        TorsionForm f = TorsionForm::from_gram(
            testutil::random_symmetric(rng, c, 1 + static_cast<int>(rng() % 4)));
        Covering cov = lift(f, 6, LiftStrategy::nondegenerate);
        BigInt pt = cov.gram_lift.ctx.pow_p(f.t);
        for (int i = 0; i < f.gram.n; ++i)
            for (int j = 0; j < f.gram.n; ++j)
                CHECK(cov.gram_lift.at(i, j) % pt == f.gram.at(i, j));
    }
}

TEST_CASE("isoclinism_invariant examples") {
    CHECK(inv_blocks(form(5, 1, {{2}})) ==
          std::vector<JordanBlock>{{0, 1, SquareClass::square}}); // orbit canonicalization
    CHECK(inv_blocks(form(5, 1, {{1, 0}, {0, 2}})) ==
          std::vector<JordanBlock>{{0, 2, SquareClass::nonsquare}});
    CHECK(inv_blocks(form(3, 2, {{1, 0}, {0, 3}})) ==
          std::vector<JordanBlock>{{0, 1, SquareClass::square}, {1, 1, SquareClass::square}});
}

TEST_CASE("isoclinic") {
    TorsionForm f = form(5, 1, {{1, 1}, {1, 2}});
    CHECK(isoclinic(f, f));
    CHECK(isoclinic(form(5, 1, {{1}}), form(5, 1, {{2}})));
    CHECK(!isoclinic(form(5, 1, {{1, 0}, {0, 1}}), form(5, 1, {{1, 0}, {0, 2}})));
    CHECK(!isoclinic(form(5, 1, {{1}}), form(5, 2, {{1}}))); // different t
    CHECK_THROWS_AS(isoclinic(form(5, 1, {{1}}), form(3, 1, {{1}})), std::invalid_argument);
}

TEST_CASE("direct_sum_trivial") {
    TorsionForm f = form(3, 1, {{1}});
    CHECK(direct_sum_trivial(f, 0) == f);

    TorsionForm padded = direct_sum_trivial(f, 2);
    CHECK(padded.quotient_rank() == 3);
    CHECK(isoclinism_invariant(padded).blocks ==
          std::vector<JordanBlock>{{0, 1, SquareClass::square}});
    CHECK(isoclinic(f, padded));
}

TEST_CASE("invariants are independent of the covering") {
    std::mt19937_64 rng(29);
    for (long long p : {3LL, 5LL})
        for (int it = 0; it < 25; ++it) {
            int t = 1 + static_cast<int>(rng() % 3);
            int m = 1 + static_cast<int>(rng() % 4);
            PAdicCtx c(p, t);
            TorsionForm f = TorsionForm::from_gram(testutil::random_symmetric(rng, c, m));
            int N = default_invariant_precision(t);
            IsoclinismInvariant a = invariant_from_covering(lift(f, N, LiftStrategy::nondegenerate, t));
            IsoclinismInvariant b =
                invariant_from_covering(lift(f, N, LiftStrategy::nondegenerate, t + 1));
            IsoclinismInvariant d =
                invariant_from_covering(testutil::perturbed_covering(rng, f, N));
            CHECK(a == b);
            CHECK(a == d);
            CHECK(a == isoclinism_invariant(f));
        }
}

TEST_CASE("invariant ranks stay within the quotient rank") {
    std::mt19937_64 rng(37);
    for (int it = 0; it < 40; ++it) {
        int t = 1 + static_cast<int>(rng() % 3);
        int m = 1 + static_cast<int>(rng() % 5);
        PAdicCtx c(3, t);
        TorsionForm f = TorsionForm::from_gram(testutil::random_symmetric(rng, c, m));
        IsoclinismInvariant inv = isoclinism_invariant(f);
        int total = 0;
        for (const auto& b : inv.blocks) total += b.rank;
        CHECK(total <= m);
    }
}

TEST_CASE("invariance under congruence mod p^t") {
    std::mt19937_64 rng(41);
    for (long long p : {3LL, 5LL})
        for (int it = 0; it < 20; ++it) {
            int t = 1 + static_cast<int>(rng() % 3);
            int m = 1 + static_cast<int>(rng() % 4);
            PAdicCtx c(p, t);
            GramMatrix g = testutil::random_symmetric(rng, c, m);
            GramMatrix h = testutil::congruent_by(g, testutil::random_unimodular(rng, c, m));
            CHECK(isoclinism_invariant(TorsionForm::from_gram(g)) ==
                  isoclinism_invariant(TorsionForm::from_gram(h)));
        }
}

TEST_CASE("isoclinic is an equivalence on a random pool") {
    std::mt19937_64 rng(43);
    PAdicCtx c(3, 2);
    std::vector<TorsionForm> pool;
    for (int i = 0; i < 12; ++i)
        pool.push_back(TorsionForm::from_gram(
            testutil::random_symmetric(rng, c, 1 + static_cast<int>(rng() % 3))));
    for (const auto& a : pool) CHECK(isoclinic(a, a));
    for (const auto& a : pool)
        for (const auto& b : pool) CHECK(isoclinic(a, b) == isoclinic(b, a));
    for (const auto& a : pool)
        for (const auto& b : pool)
            for (const auto& d : pool)
                if (isoclinic(a, b) && isoclinic(b, d)) CHECK(isoclinic(a, d));
}

TEST_CASE("count_isoclinism_formula") {
    CHECK(count_isoclinism_formula(2, 1) == 2);
    CHECK(count_isoclinism_formula(3, 1) == 1);
    CHECK(count_isoclinism_formula(4, 2) == 12);
}

TEST_CASE("count_isoclinism_enumerate") {
    CHECK(count_isoclinism_enumerate(2, 2) == 6);
    CHECK(count_isoclinism_enumerate(3, 2) == 6);
    CHECK(count_isoclinism_enumerate(2, 1) == 2);
    // splittings forced to use scale 0: {0} gives 2, {0,1} gives 2
    CHECK(count_isoclinism_enumerate(2, 2, true) == 4);
}

TEST_CASE("formula matches the enumeration") {
    for (int n = 1; n <= 10; ++n)
        for (int t = 1; t <= 5; ++t)
            CHECK(count_isoclinism_formula(n, t) == count_isoclinism_enumerate(n, t));
}
