#include <doctest.h>

#include <padyn/errors.hpp>
#include <padyn/lubin.hpp>
#include <padyn/oracle.hpp>

#include "oracles.hpp"

using namespace padyn;

namespace {

PadicSeries poly(const PrimeContext& ctx, std::vector<long> cs) {
    std::vector<PadicNumber> out;
    for (long c : cs) out.push_back(c == 0 ? PadicNumber::exact_zero(ctx.p()) : PadicNumber::from_int(ctx, c));
    return PadicSeries(ctx, Ring::integral, out);
}

bool matches_exact(const PadicSeries& s, const std::vector<mpz_class>& want) {
    for (int i = 1; i <= s.order(); ++i) {
        const auto w = PadicNumber::from_integer(s.ctx().p(), want[static_cast<std::size_t>(i - 1)], s.ctx().N());
        if (!equal_to_precision(s[i], w)) return false;
    }
    return true;
}

} // namespace

TEST_CASE("gm endomorphisms match exact binomials") {
    const PrimeContext ctx(3, 20, 10);
    CHECK(gm_endomorphism(ctx, mpz_class(4)) == poly(ctx, {4, 6, 4, 1}));
    CHECK(gm_endomorphism(ctx, mpz_class(1)) == PadicSeries::identity(ctx, Ring::integral));
    CHECK(matches_exact(gm_endomorphism(ctx, mpz_class(-1)), oracle::geometric_alternating(10)));
    for (long a : {-7L, 13L, 100L, 3125L}) CHECK(matches_exact(gm_endomorphism(ctx, mpz_class(a)), oracle::binomial_row(a, 10)));
    for (int i = 1; i <= 10; ++i) CHECK(gm_endomorphism(ctx, mpz_class(-4))[i].precision() == 20);
}

TEST_CASE("gm endomorphism is a monoid homomorphism") {
    oracle::Rng rng(23);
    for (int t = 0; t < 30; ++t) {
        const int p = t % 2 ? 3 : 2;
        const PrimeContext ctx(p, 24, 12);
        const long a = rng.below(2000) - 1000, b = rng.below(2000) - 1000;
        const auto ga = gm_endomorphism(ctx, mpz_class(a)), gb = gm_endomorphism(ctx, mpz_class(b));
        CHECK(equal_to_precision(compose(ga, gb), gm_endomorphism(ctx, mpz_class(a * b))));
        // the p-adic route agrees with the integer route
        CHECK(equal_to_precision(gm_endomorphism(ctx, PadicNumber::from_int(ctx, a)), ga));
    }
    CHECK_THROWS_AS(gm_endomorphism(PrimeContext(3, 8, 4), PadicNumber::from_parts(3, -1, 1, 4)), PreconditionError);
}

TEST_CASE("lubin-tate endomorphisms") {
    const PrimeContext c3(3, 40, 16);
    const auto f = poly(c3, {3, 0, 1});
    CHECK(equal_to_precision(lubin_tate_endo(f, PadicNumber::from_int(c3, 1)), PadicSeries::identity(c3, Ring::integral)));
    CHECK(equal_to_precision(lubin_tate_endo(f, PadicNumber::from_int(c3, 3)), f));

    const PrimeContext c2(2, 40, 16);
    CHECK(equal_to_precision(lubin_tate_endo(poly(c2, {2, 1}), PadicNumber::from_int(c2, 5)),
                             gm_endomorphism(c2, mpz_class(5))));
    CHECK_THROWS_AS(lubin_tate_endo(poly(c3, {3, 1}), PadicNumber::from_int(c3, 2)), PreconditionError);

    // composition law and agreement with the float commutant
    for (long a : {2L, 4L, -1L}) {
        for (long b : {5L, 7L}) {
            const auto pa = PadicNumber::from_int(c3, a), pb = PadicNumber::from_int(c3, b);
            CHECK(equal_to_precision(compose(lubin_tate_endo(f, pa), lubin_tate_endo(f, pb)), lubin_tate_endo(f, pa * pb)));
        }
        CHECK(equal_to_precision(lubin_tate_endo(f, PadicNumber::from_int(c3, a)).with_ring(Ring::padic_float),
                                 commutant(f, PadicNumber::from_int(c3, a))));
    }
}

TEST_CASE("minimal pair validation") {
    const PrimeContext c3(3, 24, 16);
    const auto r3 = validate_minimal_pair(gm_endomorphism(c3, mpz_class(3)), gm_endomorphism(c3, mpz_class(4)));
    CHECK(r3.is_minimal);
    CHECK(r3.wideg_f == 3);
    CHECK(r3.v_f_prime == 1);
    CHECK(r3.v_u_shift == 1);
    CHECK(r3.commutes);

    const PrimeContext c2(2, 24, 16);
    const auto r2 = validate_minimal_pair(gm_endomorphism(c2, mpz_class(2)), gm_endomorphism(c2, mpz_class(5)));
    CHECK(r2.is_minimal);
    CHECK(r2.v_u_shift == 2);

    const auto bad = validate_minimal_pair(gm_endomorphism(c3, mpz_class(3)), gm_endomorphism(c3, mpz_class(3)));
    CHECK_FALSE(bad.is_minimal);
    CHECK_FALSE(bad.u_invertible);

    // u = -x is torsion
    const auto tors = validate_minimal_pair(gm_endomorphism(c2, mpz_class(2)), gm_endomorphism(c2, mpz_class(-1)));
    CHECK_FALSE(tors.is_minimal);
}

TEST_CASE("conjugated pairs stay minimal") {
    const PrimeContext c3(3, 32, 16);
    const auto base = gm_minimal_pair(c3);
    {
        auto [f, u] = conjugate_pair(base.f, base.u, PadicSeries::identity(c3, Ring::integral));
        CHECK(equal_to_precision(f, base.f));
        CHECK(equal_to_precision(u, base.u));
    }
    for (long c : {1L, 3L}) {
        auto [f, u] = conjugate_pair(base.f, base.u, poly(c3, {1, c}));
        CHECK(validate_minimal_pair(f, u).is_minimal);
        CHECK_FALSE(f == base.f);
    }
    CHECK_THROWS_AS(conjugate_pair(base.f, base.u, poly(c3, {2, 1})), PreconditionError);
    CHECK_THROWS_AS(conjugate_pair(base.f, base.u, poly(c3, {3, 1})), PreconditionError);
}

TEST_CASE("pair generators") {
    for (int p : {2, 3, 5}) {
        const PrimeContext ctx(p, 40, 16);
        CHECK(validate_minimal_pair(gm_minimal_pair(ctx).f, gm_minimal_pair(ctx).u).is_minimal);
        const auto lt = lt_minimal_pair(ctx);
        CHECK(lt.kind == PairKind::lt);
        CHECK(validate_minimal_pair(lt.f, lt.u).is_minimal);
        const auto cj = conjugated_pair(ctx, 42);
        CHECK(cj.seed == 42u);
        CHECK(validate_minimal_pair(cj.f, cj.u).is_minimal);
        CHECK(conjugated_pair(ctx, 42).f == cj.f);
    }
}

TEST_CASE("seeded randomness is reproducible") {
    std::uint64_t s1 = 99, s2 = 99;
    CHECK(random_residue(s1, 3, 20) == random_residue(s2, 3, 20));
    CHECK(s1 == s2);
    std::uint64_t s = 1;
    for (int i = 0; i < 100; ++i) {
        const auto r = random_residue(s, 5, 7);
        CHECK(r >= 0);
        CHECK(r < 78125);
    }
    const PrimeContext ctx(3, 16, 8);
    CHECK(random_conjugator(ctx, 5) == random_conjugator(ctx, 5));
    CHECK_FALSE(random_conjugator(ctx, 5) == random_conjugator(ctx, 6));
    const auto u = gm_minimal_pair(ctx).u;
    const auto pu = perturb(u, 3);
    CHECK(pu[1] == u[1]);
    CHECK((pu[2] - u[2]).valuation() == 1);
}

TEST_CASE("perturbations break commutation") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const PrimeContext ctx(seed % 2 ? 3 : 2, 48, 24);
        const auto pair = gm_minimal_pair(ctx);
        const auto rep = validate_minimal_pair(pair.f, perturb(pair.u, seed));
        CHECK_FALSE(rep.commutes);
        CHECK_FALSE(rep.is_minimal);
    }
}
